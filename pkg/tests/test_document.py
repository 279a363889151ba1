import string

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boopcheck.config import RuleConfig
from boopcheck.document import (
    SectionKind,
    parse_blueprint,
    parse_operations,
    parse_proof,
    split_sections,
    strip_decorations,
)

from conftest import fixture_text


def section_of(source: str, kind: SectionKind):
    doc, diags = split_sections(source)
    assert doc is not None and not diags
    section = doc.section(kind)
    assert section is not None
    return section


class TestSplitSections:
    def test_four_sections_in_order(self):
        doc, diags = split_sections(fixture_text("golden.boop"))
        assert diags == []
        assert [s.kind for s in doc.sections] == list(SectionKind)

    def test_single_code_section(self):
        doc, diags = split_sections("(*** CODE ***)\nlet x = 1\n")
        assert diags == []
        assert len(doc.sections) == 1
        assert doc.sections[0].kind is SectionKind.CODE
        assert doc.preamble == ""
        assert doc.sections[0].body == "let x = 1\n"

    def test_proof_before_code_is_p003(self):
        source = "\n".join(
            [
                "(*** BLUEPRINT ***)",
                "(* function: f *)",
                "(*** PROOF ***)",
                "(* argument *)",
                "(*** CODE ***)",
                "let f = 1",
            ]
        )
        doc, diags = split_sections(source)
        assert doc is None
        assert [d.rule_id for d in diags] == ["P003"]
        offending = source.encode()[diags[0].span.start : diags[0].span.end]
        assert offending == b"(*** PROOF ***)"

    def test_duplicate_header_is_p003(self):
        source = "(*** CODE ***)\nlet x = 1\n(*** CODE ***)\nlet y = 2\n"
        doc, diags = split_sections(source)
        assert doc is None
        assert [d.rule_id for d in diags] == ["P003"]
        assert diags[0].span.start == source.index("(*** CODE ***)", 10)

    def test_header_requires_exact_spelling(self):
        doc, diags = split_sections("(*** code ***)\nlet x = 1\n")
        assert diags == []
        assert doc.sections == []  # lowercase header line is ordinary content

    def test_indented_header_recognized(self):
        doc, diags = split_sections("  (*** CODE ***)\nlet x = 1\n")
        assert diags == []
        assert doc.sections[0].kind is SectionKind.CODE

    def test_lossless_partition_on_golden(self):
        source = fixture_text("golden.boop")
        doc, _ = split_sections(source)
        data = source.encode("utf-8")
        rebuilt = doc.preamble.encode("utf-8")
        for section in doc.sections:
            rebuilt += data[section.header_span.start : section.header_span.end]
            rebuilt += section.body.encode("utf-8")
        assert rebuilt == data
        assert doc.source_len == len(data)

    def test_spans_within_source(self):
        source = fixture_text("golden.boop")
        doc, _ = split_sections(source)
        for section in doc.sections:
            for span in (section.header_span, section.body_span):
                assert 0 <= span.start <= span.end <= doc.source_len


_body_line = st.text(
    alphabet=string.ascii_letters + string.digits + " .,:*()'",
    max_size=30,
).filter(lambda line: line.strip().encode() not in {
    b"(*** BLUEPRINT ***)", b"(*** OPERATIONS ***)", b"(*** CODE ***)", b"(*** PROOF ***)"
})


@settings(max_examples=60, derandomize=True)
@given(
    preamble=_body_line,
    bodies=st.lists(st.lists(_body_line, max_size=4), min_size=1, max_size=4),
)
def test_partition_and_idempotence_properties(preamble, bodies):
    headers = ["(*** BLUEPRINT ***)", "(*** OPERATIONS ***)", "(*** CODE ***)", "(*** PROOF ***)"]
    parts = [preamble] if preamble else []
    for i, body in enumerate(bodies[:4]):
        parts.append(headers[i])
        parts.extend(body)
    source = "\n".join(parts) + "\n"
    doc, diags = split_sections(source)
    assert doc is not None and diags == []
    data = source.encode("utf-8")
    rebuilt = doc.preamble.encode("utf-8")
    for section in doc.sections:
        rebuilt += data[section.header_span.start : section.header_span.end]
        rebuilt += section.body.encode("utf-8")
    assert rebuilt == data

    doc2, diags2 = split_sections(rebuilt.decode("utf-8"))
    assert diags2 == []
    assert [s.kind for s in doc2.sections] == [s.kind for s in doc.sections]
    assert [s.body for s in doc2.sections] == [s.body for s in doc.sections]


class TestStripDecorations:
    @pytest.mark.parametrize(
        "line,expected",
        [
            (b" * requires: b <> Zero", "requires: b <> Zero"),
            (b"(* function: div *)", "function: div"),
            (b"  *)", ""),
            (b"(*", ""),
            (b"** bold **)", "bold"),
            (b"plain text", "plain text"),
            (b"   ", ""),
        ],
    )
    def test_stripping(self, line, expected):
        text, lo, hi = strip_decorations(line, 0)
        assert text == expected
        assert line[lo:hi].decode() == expected


class TestParseBlueprint:
    def test_div_contract(self):
        source = (
            "(*** BLUEPRINT ***)\n"
            "(*\n"
            " * function: div\n"
            " * requires: b <> Zero\n"
            " * ensures: a = (b * q) + r\n"
            " * ensures: less_than r b = true\n"
            " *)\n"
        )
        section = section_of(source, SectionKind.BLUEPRINT)
        contracts, diags = parse_blueprint(section)
        assert diags == []
        assert len(contracts) == 1
        contract = contracts[0]
        assert contract.name == "div"
        assert [c.text for c in contract.requires] == ["b <> Zero"]
        assert [c.text for c in contract.ensures] == [
            "a = (b * q) + r",
            "less_than r b = true",
        ]
        data = source.encode()
        for clause in contract.requires + contract.ensures:
            assert data[clause.span.start : clause.span.end].decode() == clause.text

    def test_implicit_requires_true(self):
        source = "(*** BLUEPRINT ***)\nfunction: id\nensures: output = input\n"
        contracts, diags = parse_blueprint(section_of(source, SectionKind.BLUEPRINT))
        assert diags == []
        assert contracts[0].requires[0].text == "true"
        assert contracts[0].requires[0].implicit

    def test_orphan_clause_is_p004(self):
        source = "(*** BLUEPRINT ***)\nensures: x > 0\n"
        contracts, diags = parse_blueprint(section_of(source, SectionKind.BLUEPRINT))
        assert contracts == []
        assert [d.rule_id for d in diags] == ["P004"]

    def test_contract_without_ensures_is_p005(self):
        source = "(*** BLUEPRINT ***)\nfunction: f\nrequires: x > 0\n"
        contracts, diags = parse_blueprint(section_of(source, SectionKind.BLUEPRINT))
        assert contracts == []
        assert [d.rule_id for d in diags] == ["P005"]

    def test_keys_case_insensitive_and_prose_ignored(self):
        source = (
            "(*** BLUEPRINT ***)\n"
            "We first describe the contract in prose.\n"
            "Function: div\n"
            "REQUIRES: b <> Zero\n"
            "Ensures: correct quotient\n"
        )
        contracts, diags = parse_blueprint(section_of(source, SectionKind.BLUEPRINT))
        assert diags == []
        assert contracts[0].name == "div"
        assert len(contracts[0].requires) == 1

    def test_contract_count_matches_function_lines(self):
        contracts, diags = parse_blueprint(
            section_of(fixture_text("golden.boop"), SectionKind.BLUEPRINT)
        )
        assert diags == []
        assert [c.name for c in contracts] == [
            "plus",
            "mult",
            "less_than",
            "minus",
            "div",
            "safe_div",
        ]
        assert all(c.ensures for c in contracts)


class TestParseOperations:
    def test_three_steps(self):
        source = "(*** OPERATIONS ***)\n1. first\n2. second\n3. third\n"
        steps, diags = parse_operations(section_of(source, SectionKind.OPERATIONS))
        assert diags == []
        assert [s.number for s in steps.steps] == [1, 2, 3]

    def test_skipped_number_is_p006(self):
        source = "(*** OPERATIONS ***)\n1. x\n3. y\n"
        steps, diags = parse_operations(section_of(source, SectionKind.OPERATIONS))
        assert [d.rule_id for d in diags] == ["P006"]
        assert len(steps.steps) == 2
        assert source.encode()[diags[0].span.start : diags[0].span.end] == b"3."

    def test_prose_without_steps_is_p002(self):
        source = "(*** OPERATIONS ***)\njust prose, no numbering\n"
        steps, diags = parse_operations(section_of(source, SectionKind.OPERATIONS))
        assert steps.steps == []
        assert [d.rule_id for d in diags] == ["P002"]

    def test_continuation_lines_attach(self):
        source = "(*** OPERATIONS ***)\n(*\n * 1. start\n *    and continue\n * 2. next\n *)\n"
        steps, diags = parse_operations(section_of(source, SectionKind.OPERATIONS))
        assert diags == []
        assert steps.steps[0].text == "start and continue"
        assert steps.steps[1].text == "next"


class TestParseProof:
    def strategies(self):
        return RuleConfig().proof_strategies

    def test_induction_markers_found(self):
        section = section_of(fixture_text("golden.boop"), SectionKind.PROOF)
        outline = parse_proof(section, self.strategies())
        names = {m for m, _ in outline.markers}
        assert {"base case", "inductive hypothesis", "inductive step"} <= names

    def test_invariant_markers_found(self):
        section = section_of(fixture_text("appendix_c.boop"), SectionKind.PROOF)
        outline = parse_proof(section, self.strategies())
        names = {m for m, _ in outline.markers}
        assert {"initialization", "maintenance", "termination"} <= names

    def test_empty_body_yields_no_markers(self):
        source = "(*** PROOF ***)\n"
        outline = parse_proof(section_of(source, SectionKind.PROOF), self.strategies())
        assert outline.markers == []

    def test_markers_in_text_order_with_correct_spans(self):
        source = "(*** PROOF ***)\nBase case here. Then the Inductive Step.\n"
        outline = parse_proof(section_of(source, SectionKind.PROOF), self.strategies())
        assert [m for m, _ in outline.markers] == ["base case", "inductive step"]
        data = source.encode()
        for marker, span in outline.markers:
            assert data[span.start : span.end].decode().lower() == marker
