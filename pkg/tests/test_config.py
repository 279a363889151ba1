import pytest

from boopcheck.config import (
    ConfigError,
    RuleConfig,
    discover_config_path,
    load_config,
    resolve_config,
)
from boopcheck.diagnostics import Severity
from boopcheck.document import SectionKind


class TestDefaults:
    def test_empty_text_gives_defaults(self):
        config = load_config("")
        assert config == RuleConfig()

    def test_empty_object_gives_defaults(self):
        assert load_config("{}") == RuleConfig()

    def test_default_levels(self):
        config = RuleConfig()
        for rule in ("I001", "I002", "T001", "B001", "R001"):
            assert config.severity_of(rule) is Severity.ERROR
        for rule in ("S001", "S002", "C001", "U001"):
            assert config.severity_of(rule) is Severity.WARN
        assert config.banned_operators == []
        assert config.banned_identifier_prefixes == ["List.", "Array.", "String.", "Hashtbl."]
        assert config.allowed_identifiers == ["failwith", "ref", "not"]
        assert config.required_sections == list(SectionKind)

    def test_default_strategies(self):
        names = {s.name: s.markers for s in RuleConfig().proof_strategies}
        assert names["induction"] == ["base case", "inductive hypothesis", "inductive step"]
        assert names["invariant"] == ["initialization", "maintenance", "termination"]


class TestOverlay:
    def test_single_level_overlay(self):
        config = load_config('{"levels": {"I001": "off"}}')
        assert config.severity_of("I001") is Severity.OFF
        assert config.severity_of("I002") is Severity.ERROR

    def test_list_fields_replace(self):
        config = load_config('{"banned_identifier_prefixes": ["Printf."]}')
        assert config.banned_identifier_prefixes == ["Printf."]
        assert config.allowed_identifiers == ["failwith", "ref", "not"]

    def test_required_sections(self):
        config = load_config('{"required_sections": ["code"]}')
        assert config.required_sections == [SectionKind.CODE]

    def test_proof_strategies_and_strict_if(self):
        config = load_config(
            '{"proof_strategies": [{"name": "cases", "markers": ["case"]}], "strict_if": true}'
        )
        assert config.proof_strategies[0].name == "cases"
        assert config.strict_if is True


class TestRejections:
    @pytest.mark.parametrize(
        "text,needle",
        [
            ("{", "valid JSON"),
            ("[]", "object"),
            ('{"levels": {"Z999": "error"}}', "Z999"),
            ('{"levels": {"I001": "fatal"}}', "fatal"),
            ('{"level": {}}', "level"),
            ('{"version": "1"}', "integer"),
            ('{"banned_operators": [1]}', "strings"),
            ('{"proof_strategies": [{"name": "x", "markers": []}]}', "markers"),
            ('{"required_sections": ["appendix"]}', "appendix"),
            ('{"strict_if": "yes"}', "boolean"),
        ],
    )
    def test_malformed_config_is_g001(self, text, needle):
        with pytest.raises(ConfigError) as err:
            load_config(text)
        assert err.value.diagnostic.rule_id == "G001"
        assert needle in str(err.value)


class TestDiscovery:
    def test_discovery_walks_ancestors(self, tmp_path, monkeypatch):
        monkeypatch.delenv("BOOP_CONFIG", raising=False)
        (tmp_path / "boop.config.json").write_text('{"strict_if": true}')
        nested = tmp_path / "a" / "b"
        nested.mkdir(parents=True)
        target = nested / "work.boop"
        target.write_text("(*** CODE ***)\nlet x = 1\n")
        assert discover_config_path(target) == tmp_path / "boop.config.json"
        assert resolve_config(target).strict_if is True

    def test_env_var_overrides_discovery(self, tmp_path, monkeypatch):
        override = tmp_path / "special.json"
        override.write_text('{"strict_if": true}')
        (tmp_path / "boop.config.json").write_text('{"strict_if": false}')
        monkeypatch.setenv("BOOP_CONFIG", str(override))
        assert resolve_config(tmp_path / "x.boop").strict_if is True

    def test_no_config_anywhere_gives_defaults(self, tmp_path, monkeypatch):
        monkeypatch.delenv("BOOP_CONFIG", raising=False)
        assert resolve_config(tmp_path / "x.boop") == RuleConfig()
