"""Adapter endpoints for the neural models the pipeline depends on.

The wire protocol is line-delimited JSON over a child process's standard
streams or an HTTP POST endpoint.  One request per line::

    {"id": "...", "kind": "text_to_amr"|"amr_to_text"|"perplexity"|"embed", "payload": ...}

and one response line per request, correlated by id::

    {"id": "...", "ok": true, "payload": ...}
    {"id": "...", "ok": false, "error": "..."}

Perplexity payloads are per-token-normalized: exp of the mean negative
log-likelihood per token, so the filtering thresholds are portable
across sentence lengths.

``MockAdapter`` is a deterministic in-process stand-in used by the test
suite and by ``--mock`` pipeline runs; ``serve_mock`` exposes the same
behaviour over the stdio protocol.
"""

from __future__ import annotations

import hashlib
import json
import subprocess
import sys
import urllib.request
from dataclasses import dataclass

from .metrics import tokenize
from .parser import parse_penman

KINDS = ("text_to_amr", "amr_to_text", "perplexity", "embed")


class AdapterError(Exception):
    """Transport-level adapter failure (process death, bad batch)."""


@dataclass
class Request:
    id: str
    kind: str
    payload: object

    def line(self) -> str:
        return json.dumps({"id": self.id, "kind": self.kind, "payload": self.payload})


@dataclass
class Response:
    id: str
    ok: bool
    payload: object = None
    error: str | None = None


def parse_response_line(line: str) -> Response:
    try:
        data = json.loads(line)
    except json.JSONDecodeError as e:
        raise AdapterError(f"malformed response line: {e}") from e
    if not isinstance(data, dict) or "id" not in data or "ok" not in data:
        raise AdapterError(f"response missing id/ok fields: {line.strip()!r}")
    return Response(str(data["id"]), bool(data["ok"]), data.get("payload"), data.get("error"))


def call_adapter(adapter, requests: list[Request], retries: int = 1) -> list[Response]:
    """Send a batch, correlate responses by id, retry transport failures once.

    Items whose response is missing or malformed come back as ok=false;
    batching never changes per-item semantics.
    """
    attempt = 0
    while True:
        try:
            responses = adapter.call(requests)
            break
        except AdapterError as e:
            attempt += 1
            if attempt > retries:
                return [Response(r.id, False, error=f"adapter failed after retry: {e}") for r in requests]
    by_id = {}
    for r in responses:
        by_id.setdefault(r.id, r)
    return [by_id.get(r.id, Response(r.id, False, error="no response for id")) for r in requests]


class ProcessAdapter:
    """Runs one batch at a time through a child process's stdio."""

    def __init__(self, command: list[str]):
        self.command = command
        self.proc = None

    def _ensure(self):
        if self.proc is None or self.proc.poll() is not None:
            self.proc = subprocess.Popen(
                self.command,
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                text=True,
                encoding="utf-8",
            )

    def call(self, requests: list[Request]) -> list[Response]:
        self._ensure()
        try:
            for r in requests:
                self.proc.stdin.write(r.line() + "\n")
            self.proc.stdin.flush()
            out = []
            for _ in requests:
                line = self.proc.stdout.readline()
                if not line:
                    raise AdapterError("adapter process closed its output")
                out.append(parse_response_line(line))
            return out
        except (BrokenPipeError, OSError) as e:
            self.proc = None
            raise AdapterError(str(e)) from e

    def close(self):
        if self.proc is not None and self.proc.poll() is None:
            self.proc.stdin.close()
            self.proc.wait(timeout=10)
        self.proc = None


class HttpAdapter:
    """POSTs request lines to an HTTP endpoint returning response lines."""

    def __init__(self, url: str, timeout: float = 60.0):
        self.url = url
        self.timeout = timeout

    def call(self, requests: list[Request]) -> list[Response]:
        body = "\n".join(r.line() for r in requests).encode("utf-8") + b"\n"
        req = urllib.request.Request(self.url, data=body, headers={"Content-Type": "application/x-ndjson"})
        try:
            with urllib.request.urlopen(req, timeout=self.timeout) as resp:
                text = resp.read().decode("utf-8")
        except OSError as e:
            raise AdapterError(f"http transport failure: {e}") from e
        return [parse_response_line(line) for line in text.splitlines() if line.strip()]


def _stable_hash(text: str) -> int:
    return int.from_bytes(hashlib.sha256(text.encode("utf-8")).digest()[:8], "big")


def _concept_token(word: str) -> str:
    cleaned = "".join(c for c in word.lower() if c.isalnum() or c == "-")
    return cleaned or "thing"


class MockAdapter:
    """Deterministic model stand-in implementing all four kinds.

    text_to_amr builds a chain graph over the sentence's word tokens;
    amr_to_text reads the concepts of a linearized graph back off in
    serialization order (so the focus concept leads the sentence);
    perplexity is a stable hash-derived positive value, overridable per
    sentence; embed hashes character trigrams into a fixed-size vector.
    """

    def __init__(self, perplexities: dict[str, float] | None = None, default_perplexity: float | None = None):
        self.perplexities = dict(perplexities or {})
        self.default_perplexity = default_perplexity

    def call(self, requests: list[Request]) -> list[Response]:
        out = []
        for r in requests:
            try:
                out.append(Response(r.id, True, self.handle(r.kind, r.payload)))
            except Exception as e:
                out.append(Response(r.id, False, error=str(e)))
        return out

    def handle(self, kind: str, payload):
        if kind == "text_to_amr":
            return self.text_to_amr(payload)
        if kind == "amr_to_text":
            return self.amr_to_text(payload)
        if kind == "perplexity":
            return self.perplexity(payload)
        if kind == "embed":
            return self.embed(payload)
        raise ValueError(f"unknown kind {kind!r}")

    def text_to_amr(self, sentence: str) -> str:
        words = [w for w in tokenize(sentence) if w.isalnum()]
        if not words:
            raise ValueError("no words to parse")
        parts = []
        for i, w in enumerate(words):
            parts.append(f"(z{i + 1} / {_concept_token(w)}")
            if i < len(words) - 1:
                parts.append(f":op{i + 1} ")
        text = " ".join(parts) + ")" * len(words)
        return text

    def amr_to_text(self, linearized: str) -> str:
        graph = parse_penman(linearized)
        concepts = []
        for t in graph.triples:
            if t.is_instance:
                concept = str(t.target)
                head, _, sense = concept.rpartition("-")
                concepts.append(head if head and sense.isdigit() else concept)
        sentence = " ".join(concepts)
        return sentence[:1].upper() + sentence[1:] + "."

    def perplexity(self, sentence: str) -> float:
        if sentence in self.perplexities:
            return self.perplexities[sentence]
        if self.default_perplexity is not None:
            return self.default_perplexity
        return 10.0 + (_stable_hash(sentence) % 2000) / 10.0

    def embed(self, sentence: str) -> list[float]:
        dims = 16
        vec = [0.0] * dims
        text = f"^{sentence.lower()}$"
        for i in range(len(text) - 2):
            h = _stable_hash(text[i : i + 3])
            vec[h % dims] += 1.0 if (h >> 8) % 2 == 0 else -1.0
        if all(v == 0.0 for v in vec):
            vec[0] = 1.0
        return vec


def serve_mock(stdin=None, stdout=None, perplexities: dict[str, float] | None = None):
    """Run the stdio protocol loop around a MockAdapter until end-of-input."""
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    mock = MockAdapter(perplexities)
    for line in stdin:
        if not line.strip():
            continue
        try:
            data = json.loads(line)
            req = Request(str(data["id"]), data["kind"], data["payload"])
        except (json.JSONDecodeError, KeyError, TypeError) as e:
            stdout.write(json.dumps({"id": None, "ok": False, "error": f"bad request: {e}"}) + "\n")
            stdout.flush()
            continue
        resp = mock.call([req])[0]
        record = {"id": resp.id, "ok": resp.ok}
        if resp.ok:
            record["payload"] = resp.payload
        else:
            record["error"] = resp.error
        stdout.write(json.dumps(record) + "\n")
        stdout.flush()
