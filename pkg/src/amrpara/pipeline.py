"""End-to-end paraphrase corpus construction.

For each source sentence: parse to AMR, generate re-focused linearized
variants, realize each variant through the text generator, score with
the language-model perplexity adapter, filter against the threshold,
drop duplicates, and write the dataset plus a run manifest whose stage
counts always balance (input = kept + dropped + skipped).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path

from .adapters import Request, call_adapter
from .graph import AmrError
from .metrics import PairScores, tokenize
from .parser import parse_penman
from .refocus import variants

#: Perplexity threshold presets, keyed by downstream application profile.
PROFILES = {
    "dataset": 120.0,
    "embeddings": 110.0,
    "generation": 85.0,
    "fewshot": 110.0,
}


@dataclass
class ParaphraseRecord:
    source_id: str
    source: str
    focus: str  # "variable concept", e.g. "z3 need"
    linearized: str
    paraphrase: str
    perplexity: float
    scores: PairScores | None = None

    def as_dict(self) -> dict:
        out = {
            "source_id": self.source_id,
            "source": self.source,
            "focus": self.focus,
            "linearized": self.linearized,
            "paraphrase": self.paraphrase,
            "perplexity": self.perplexity,
        }
        if self.scores is not None:
            out["scores"] = self.scores.as_dict()
        return out


@dataclass
class PipelineConfig:
    foci: int = 8
    seed: int = 0
    threshold: float = PROFILES["dataset"]
    batch_size: int = 16
    input_path: str | None = None
    output_dir: str | None = None

    @classmethod
    def with_profile(cls, profile: str, **kwargs) -> "PipelineConfig":
        if profile not in PROFILES:
            raise ValueError(f"unknown profile {profile!r}; choose from {sorted(PROFILES)}")
        kwargs.setdefault("threshold", PROFILES[profile])
        return cls(**kwargs)


def filter_by_perplexity(records, threshold: float):
    """Partition records into (kept, dropped); keep iff perplexity <= threshold."""
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    kept = [r for r in records if r.perplexity <= threshold]
    dropped = [r for r in records if r.perplexity > threshold]
    return kept, dropped


def dedupe(records):
    """Drop paraphrases equal to the source or an earlier paraphrase.

    Equality is over tokenized text, so case and punctuation spacing do
    not count as differences; the first occurrence wins.
    """
    out = []
    seen: dict[str, set] = {}
    for r in records:
        keys = seen.setdefault(r.source_id, {tuple(tokenize(r.source))})
        key = tuple(tokenize(r.paraphrase))
        if key in keys:
            continue
        keys.add(key)
        out.append(r)
    return out


@dataclass
class RunResult:
    records: list
    skips: list  # dicts with source_id, stage, reason
    manifest: dict


def _batched(items, size):
    for i in range(0, len(items), size):
        yield items[i : i + size]


def _batch_call(adapter, kind, payloads, batch_size):
    """Call an adapter over id-tagged batches; returns payloads or errors."""
    requests = [Request(f"{kind}-{i}", kind, p) for i, p in enumerate(payloads)]
    results = {}
    for batch in _batched(requests, batch_size):
        for resp in call_adapter(adapter, batch):
            results[resp.id] = resp
    out = []
    for r in requests:
        resp = results[r.id]
        out.append((resp.payload, None) if resp.ok else (None, resp.error or "adapter error"))
    return out


def run_pipeline(config: PipelineConfig, adapters: dict, sentences: list[str] | None = None) -> RunResult:
    """Run the full construction pipeline.

    ``adapters`` maps kind -> adapter object; ``text_to_amr``,
    ``amr_to_text`` and ``perplexity`` are required.  Sentences come from
    ``config.input_path`` (one per line) unless passed directly.  When
    ``config.output_dir`` is set, writes dataset.jsonl, skips.jsonl and
    manifest.json there.
    """
    for kind in ("text_to_amr", "amr_to_text", "perplexity"):
        if kind not in adapters:
            raise ValueError(f"missing required adapter: {kind}")
    if sentences is None:
        if config.input_path is None:
            raise ValueError("no input: provide sentences or config.input_path")
        sentences = [s for s in Path(config.input_path).read_text(encoding="utf-8").splitlines() if s.strip()]

    sources = [(f"s{i:05d}", s.strip()) for i, s in enumerate(sentences)]
    skips = []
    counts = {
        "sources": len(sources),
        "parsed": 0,
        "parse_skipped": 0,
        "variants": 0,
        "realized": 0,
        "realize_skipped": 0,
        "scored": 0,
        "score_skipped": 0,
        "filtered_out": 0,
        "duplicates": 0,
        "kept": 0,
    }

    parse_results = _batch_call(adapters["text_to_amr"], "text_to_amr", [s for _, s in sources], config.batch_size)
    graphs = []
    for (sid, sent), (payload, err) in zip(sources, parse_results):
        if err is None:
            try:
                graphs.append((sid, sent, parse_penman(payload)))
                counts["parsed"] += 1
                continue
            except AmrError as e:
                err = f"unparseable AMR from adapter: {e}"
        counts["parse_skipped"] += 1
        skips.append({"source_id": sid, "stage": "parse", "reason": err})

    candidates = []  # (sid, sent, variant)
    for sid, sent, graph in graphs:
        rng_seed = f"{config.seed}:{sid}"
        for variant in variants(graph, config.foci, rng_seed):
            candidates.append((sid, sent, variant))
    counts["variants"] = len(candidates)

    realizations = _batch_call(
        adapters["amr_to_text"], "amr_to_text", [v.linearized for _, _, v in candidates], config.batch_size
    )
    realized = []
    for (sid, sent, variant), (text, err) in zip(candidates, realizations):
        if err is None and text:
            realized.append((sid, sent, variant, text))
            counts["realized"] += 1
        else:
            counts["realize_skipped"] += 1
            skips.append({"source_id": sid, "stage": "realize", "reason": err or "empty realization"})

    ppls = _batch_call(adapters["perplexity"], "perplexity", [t for _, _, _, t in realized], config.batch_size)
    records = []
    for (sid, sent, variant, text), (ppl, err) in zip(realized, ppls):
        if err is None and isinstance(ppl, (int, float)) and ppl > 0:
            concept = variant.graph.instances()[variant.focus]
            records.append(
                ParaphraseRecord(sid, sent, f"{variant.focus} {concept}", variant.linearized, text, float(ppl))
            )
            counts["scored"] += 1
        else:
            counts["score_skipped"] += 1
            skips.append({"source_id": sid, "stage": "score", "reason": err or f"invalid perplexity {ppl!r}"})

    kept, dropped = filter_by_perplexity(records, config.threshold)
    counts["filtered_out"] = len(dropped)
    for r in dropped:
        skips.append(
            {"source_id": r.source_id, "stage": "filter", "reason": f"perplexity {r.perplexity} > {config.threshold}"}
        )

    deduped = dedupe(kept)
    counts["duplicates"] = len(kept) - len(deduped)
    counts["kept"] = len(deduped)

    manifest = {
        "config": {
            "foci": config.foci,
            "seed": config.seed,
            "threshold": config.threshold,
            "batch_size": config.batch_size,
        },
        "counts": counts,
    }
    result = RunResult(deduped, skips, manifest)
    if config.output_dir is not None:
        write_outputs(result, config.output_dir)
    return result


def write_outputs(result: RunResult, output_dir):
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "dataset.jsonl", "w", encoding="utf-8") as f:
        for r in result.records:
            f.write(json.dumps(r.as_dict()) + "\n")
    with open(out / "skips.jsonl", "w", encoding="utf-8") as f:
        for s in result.skips:
            f.write(json.dumps(s) + "\n")
    with open(out / "manifest.json", "w", encoding="utf-8") as f:
        json.dump(result.manifest, f, indent=2, sort_keys=True)
        f.write("\n")


def records_from_lines(lines) -> list[ParaphraseRecord]:
    records = []
    for line in lines:
        if not line.strip():
            continue
        data = json.loads(line)
        scores = PairScores(**data["scores"]) if "scores" in data else None
        records.append(
            ParaphraseRecord(
                data["source_id"],
                data["source"],
                data["focus"],
                data["linearized"],
                data["paraphrase"],
                data["perplexity"],
                scores,
            )
        )
    return records


def load_records(path) -> list[ParaphraseRecord]:
    with open(path, encoding="utf-8") as f:
        return records_from_lines(f)
