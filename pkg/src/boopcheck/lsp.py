"""Language server over stdin/stdout.

Speaks Content-Length framed JSON-RPC 2.0.  Text synchronization is
full-document; every accepted open or change reruns the whole checking
pipeline and publishes the complete diagnostic set for that URI (an empty
list clears earlier findings).  The custom request ``boop/phaseStatus``
reports each phase as present, missing, or empty.
"""

from __future__ import annotations

import json
import os
import sys
import urllib.parse
from pathlib import Path

from .checker import check_text, phase_statuses
from .config import CONFIG_ENV_VAR, ConfigError, RuleConfig, discover_config_path, load_config_file
from .diagnostics import LineIndex, Severity

PARSE_ERROR = -32700
INVALID_REQUEST = -32600
METHOD_NOT_FOUND = -32601
INVALID_PARAMS = -32602
SERVER_NOT_INITIALIZED = -32002


def _uri_to_path(uri: str) -> Path | None:
    parsed = urllib.parse.urlparse(uri)
    if parsed.scheme != "file":
        return None
    return Path(urllib.parse.unquote(parsed.path))


class LspServer:
    def __init__(self, reader=None, writer=None):
        self.reader = reader if reader is not None else sys.stdin.buffer
        self.writer = writer if writer is not None else sys.stdout.buffer
        self.initialized = False
        self.shutdown_received = False
        self.exit_code: int | None = None
        self.root: Path | None = None
        self.documents: dict[str, tuple[int, str]] = {}
        self._config_cache: tuple[str, float, RuleConfig] | None = None

    # --- Wire protocol ----------------------------------------------------

    def _read_message(self) -> dict | None:
        length = None
        while True:
            line = self.reader.readline()
            if not line:
                return None
            line = line.strip()
            if not line:
                break
            if line.lower().startswith(b"content-length:"):
                try:
                    length = int(line.split(b":", 1)[1])
                except ValueError:
                    return None
        if length is None:
            return None
        body = self.reader.read(length)
        if len(body) < length:
            return None
        try:
            return json.loads(body.decode("utf-8"))
        except json.JSONDecodeError:
            self._send({"jsonrpc": "2.0", "id": None, "error": {
                "code": PARSE_ERROR, "message": "invalid JSON body"}})
            return {}

    def _send(self, payload: dict) -> None:
        body = json.dumps(payload).encode("utf-8")
        self.writer.write(f"Content-Length: {len(body)}\r\n\r\n".encode("ascii"))
        self.writer.write(body)
        self.writer.flush()

    def _respond(self, msg_id, result) -> None:
        self._send({"jsonrpc": "2.0", "id": msg_id, "result": result})

    def _respond_error(self, msg_id, code: int, message: str) -> None:
        self._send({"jsonrpc": "2.0", "id": msg_id, "error": {"code": code, "message": message}})

    def _notify(self, method: str, params: dict) -> None:
        self._send({"jsonrpc": "2.0", "method": method, "params": params})

    def _log(self, message: str) -> None:
        print(f"boopcheck lsp: {message}", file=sys.stderr)

    # --- Main loop ---------------------------------------------------------

    def serve(self) -> int:
        while self.exit_code is None:
            message = self._read_message()
            if message is None:
                return 0 if self.shutdown_received else 1
            if not message:
                continue
            self._dispatch(message)
        return self.exit_code

    def _dispatch(self, message: dict) -> None:
        method = message.get("method")
        msg_id = message.get("id")
        params = message.get("params") or {}
        is_request = "id" in message

        if method == "exit":
            self.exit_code = 0 if self.shutdown_received else 1
            return
        if method == "initialize":
            if self.initialized:
                self._respond_error(msg_id, INVALID_REQUEST, "initialize may only be sent once")
                return
            self.initialized = True
            root_uri = params.get("rootUri") or ""
            if not root_uri and params.get("workspaceFolders"):
                root_uri = params["workspaceFolders"][0].get("uri", "")
            if root_uri:
                self.root = _uri_to_path(root_uri)
            elif params.get("rootPath"):
                self.root = Path(params["rootPath"])
            self._respond(msg_id, {
                "capabilities": {"textDocumentSync": 1},
                "serverInfo": {"name": "boopcheck", "version": "0.1.0"},
            })
            return

        if not self.initialized:
            if is_request:
                self._respond_error(msg_id, SERVER_NOT_INITIALIZED, "server not initialized")
            return

        if method == "shutdown":
            self.shutdown_received = True
            self._respond(msg_id, None)
        elif method == "initialized":
            pass
        elif method == "textDocument/didOpen":
            doc = params.get("textDocument") or {}
            uri = doc.get("uri")
            if uri:
                self.documents[uri] = (doc.get("version") or 0, doc.get("text") or "")
                self._publish(uri)
        elif method == "textDocument/didChange":
            self._on_change(params)
        elif method == "textDocument/didClose":
            doc = params.get("textDocument") or {}
            self.documents.pop(doc.get("uri"), None)
        elif method == "boop/phaseStatus":
            uri = params.get("uri") or (params.get("textDocument") or {}).get("uri")
            if uri not in self.documents:
                self._respond_error(msg_id, INVALID_PARAMS, f"unknown document: {uri}")
                return
            self._respond(msg_id, phase_statuses(self.documents[uri][1]))
        elif is_request:
            self._respond_error(msg_id, METHOD_NOT_FOUND, f"unsupported method {method}")
        # Unknown notifications (including $/ traffic) are dropped silently.

    def _on_change(self, params: dict) -> None:
        doc = params.get("textDocument") or {}
        uri = doc.get("uri")
        if uri not in self.documents:
            self._log(f"didChange for unknown document {uri}; ignored")
            return
        version = doc.get("version") or 0
        current_version, _text = self.documents[uri]
        if version <= current_version:
            return  # stale update: keep versions monotonically increasing
        changes = params.get("contentChanges") or []
        if not changes:
            return
        self.documents[uri] = (version, changes[-1].get("text") or "")
        self._publish(uri)

    # --- Checking ----------------------------------------------------------

    def _config_for(self, uri: str) -> RuleConfig:
        path = _uri_to_path(uri)
        anchor = path.parent if path is not None else (self.root or Path.cwd())
        env = os.environ.get(CONFIG_ENV_VAR)
        config_path = Path(env) if env else discover_config_path(anchor)
        if config_path is None and self.root is not None:
            candidate = self.root / "boop.config.json"
            config_path = candidate if candidate.is_file() else None
        if config_path is None:
            return RuleConfig()
        try:
            mtime = config_path.stat().st_mtime
        except OSError:
            return RuleConfig()
        cached = self._config_cache
        if cached is not None and cached[0] == str(config_path) and cached[1] == mtime:
            return cached[2]
        try:
            config = load_config_file(config_path)
        except ConfigError as exc:
            self._log(f"{exc}; using default configuration")
            config = RuleConfig()
        self._config_cache = (str(config_path), mtime, config)
        return config

    def _publish(self, uri: str) -> None:
        _version, text = self.documents[uri]
        path = _uri_to_path(uri)
        label = str(path) if path is not None else uri
        result = check_text(text, label, self._config_for(uri))
        index = LineIndex(text.encode("utf-8"))
        payload = []
        for diag in result.diagnostics:
            start = index.utf16_position(diag.span.start)
            end = index.utf16_position(diag.span.end)
            item = {
                "range": {
                    "start": {"line": start[0], "character": start[1]},
                    "end": {"line": end[0], "character": end[1]},
                },
                "severity": 1 if diag.severity is Severity.ERROR else 2,
                "code": diag.rule_id,
                "source": "boopcheck",
                "message": diag.message,
            }
            if diag.note:
                item["data"] = {"note": diag.note}
            payload.append(item)
        self._notify(
            "textDocument/publishDiagnostics",
            {"uri": uri, "diagnostics": payload},
        )
