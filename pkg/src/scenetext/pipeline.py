"""End-to-end corpus builds: stream, validate, subsample, build, shard.

Every output is a pure function of (inputs, config): subsampling and
shuffling key off stable hashes of record ids, per-record RNGs are derived
from (seed, image_id), and shards plus manifest are byte-reproducible
across reruns, worker counts, and input orderings.
"""

import dataclasses
import gzip
import hashlib
import json
import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from . import __version__
from .errors import ConfigError, ParseError, SchemaError, SkipRecord
from .finetune import Task, build_caption_examples, build_vqa_examples
from .hashing import hash64, keep_fraction
from .pretrain import Objective, ObjectiveConfig, build_example, build_stage_plan
from .records import CorpusValidator, Record, parse_record
from .textformat import TextFormat


@dataclass(frozen=True)
class PipelineConfig:
    inputs: tuple[str, ...]
    out_dir: str
    stages: tuple[Objective, ...] = (Objective.SPLITOCR,)
    seed: int = 0
    fraction: float = 1.0
    shard_count: int = 1
    overlap_threshold: float = 0.5
    fmt: TextFormat = TextFormat()
    passes: int = 1
    threads: int = 1
    compress: bool = False
    resolution: int | None = None  # image-resolution tag, manifest metadata only

    def __post_init__(self):
        if not 0.0 < self.fraction <= 1.0:
            raise ConfigError(f"fraction must be in (0, 1], got {self.fraction}")
        if self.shard_count < 1:
            raise ConfigError(f"shard count must be >= 1, got {self.shard_count}")
        if self.passes < 1:
            raise ConfigError("passes must be >= 1")

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["inputs"] = list(self.inputs)
        d["stages"] = [s.value for s in self.stages]
        return d


@dataclass
class DatasetStats:
    record_count: int = 0
    eligible: Counter = field(default_factory=Counter)
    ocr_token_histogram: Counter = field(default_factory=Counter)
    caption_length_histogram: Counter = field(default_factory=Counter)
    empty_ocr_count: int = 0

    @property
    def empty_ocr_fraction(self) -> float:
        return self.empty_ocr_count / self.record_count if self.record_count else 0.0

    def to_dict(self) -> dict:
        return {
            "record_count": self.record_count,
            "eligible": {k: v for k, v in sorted(self.eligible.items())},
            "ocr_token_histogram": {str(k): v for k, v in sorted(self.ocr_token_histogram.items())},
            "caption_length_histogram": {str(k): v for k, v in sorted(self.caption_length_histogram.items())},
            "empty_ocr_count": self.empty_ocr_count,
            "empty_ocr_fraction": self.empty_ocr_fraction,
        }


def iter_lines(paths: Iterable[str]) -> Iterator[str]:
    for path in paths:
        opener = gzip.open if str(path).endswith(".gz") else open
        with opener(path, "rt", encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    yield line


def subsample(records: Iterable[Record], fraction: float, seed: int) -> Iterator[Record]:
    """Keep a record iff hash64(seed, image_id)/2^64 < fraction.

    Order-independent, and nested across fractions under the same seed.
    """
    if not 0.0 < fraction <= 1.0:
        raise ConfigError(f"fraction must be in (0, 1], got {fraction}")
    if fraction == 1.0:
        yield from records
        return
    for record in records:
        if keep_fraction(seed, record.image_id, fraction):
            yield record


def compute_stats(records: Iterable[Record]) -> DatasetStats:
    """Single streaming pass of exact counts."""
    stats = DatasetStats()
    for r in records:
        stats.record_count += 1
        n_ocr = len(r.ocr)
        stats.ocr_token_histogram[n_ocr] += 1
        if n_ocr == 0:
            stats.empty_ocr_count += 1
        else:
            stats.eligible[Objective.OCR.value] += 1
            stats.eligible[Objective.SPLITOCR.value] += 1
        if r.caption:
            stats.caption_length_histogram[len(r.caption.split())] += 1
            stats.eligible[Objective.CAP.value] += 1
            if r.caption.split():
                stats.eligible[Objective.SPLITCAP.value] += 1
    return stats


def shuffle_and_shard(examples: list[tuple[str, str]], seed: int,
                      shard_count: int) -> list[list[str]]:
    """Deterministically permute (example_id, line) pairs and assign them
    round-robin to shard_count buckets of JSONL lines."""
    if shard_count < 1:
        raise ConfigError(f"shard count must be >= 1, got {shard_count}")
    permuted = sorted(examples, key=lambda e: (hash64(seed, "shuffle", e[0]), e[0]))
    shards: list[list[str]] = [[] for _ in range(shard_count)]
    for i, (_, line) in enumerate(permuted):
        shards[i % shard_count].append(line)
    return shards


def _build_pretrain_examples(records, objective, config: PipelineConfig):
    obj_config = ObjectiveConfig(fmt=config.fmt, overlap_threshold=config.overlap_threshold)
    built = []

    def one(record):
        out = []
        for pass_index in range(config.passes):
            cfg = dataclasses.replace(obj_config, pass_index=pass_index)
            try:
                ex = build_example(record, objective, config.seed, cfg)
            except SkipRecord:
                return out
            out.append((ex.example_id, ex.to_json()))
        return out

    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            for chunk in pool.map(one, records, chunksize=256):
                built.extend(chunk)
    else:
        for record in records:
            built.extend(one(record))
    built.sort(key=lambda e: e[0])
    return built


def _build_finetune_examples(records, task: Task, ocr_included: bool,
                             config: PipelineConfig):
    obj_config = ObjectiveConfig(fmt=config.fmt, overlap_threshold=config.overlap_threshold)
    built = []
    for record in records:
        try:
            if task is Task.VQA:
                examples = build_vqa_examples(record, ocr_included, obj_config)
            else:
                examples = build_caption_examples(record, ocr_included, obj_config)
        except SkipRecord:
            continue
        built.extend((ex.example_id, ex.to_json()) for ex in examples)
    built.sort(key=lambda e: e[0])
    return built


def _write_shards(shards: list[list[str]], out_dir: str, dataset: str,
                  compress: bool) -> list[dict]:
    infos = []
    suffix = ".jsonl.gz" if compress else ".jsonl"
    for i, lines in enumerate(shards):
        name = f"{dataset}-{i:05d}-of-{len(shards):05d}{suffix}"
        path = os.path.join(out_dir, name)
        payload = "".join(line + "\n" for line in lines).encode("utf-8")
        if compress:
            # fixed mtime so compressed shards are byte-reproducible
            data = gzip.compress(payload, mtime=0)
        else:
            data = payload
        with open(path, "wb") as fh:
            fh.write(data)
        infos.append({
            "file": name,
            "examples": len(lines),
            "sha256": hashlib.sha256(data).hexdigest(),
        })
    return infos


def _config_hash(config: PipelineConfig) -> str:
    canon = json.dumps(config.to_dict(), sort_keys=True).encode("utf-8")
    return hashlib.sha256(canon).hexdigest()


def load_records(config: PipelineConfig, counters: Counter) -> list[Record]:
    """Ingest, validate, and subsample; invalid records are counted and
    skipped, never fatal."""
    validator = CorpusValidator()
    records = []
    for line in iter_lines(config.inputs):
        counters["lines"] += 1
        try:
            record = parse_record(line)
        except (ParseError, SchemaError):
            counters["parse_errors"] += 1
            continue
        report = validator.validate(record)
        if not report.ok:
            counters["validation_skips"] += 1
            continue
        records.append(record)
    counters["valid_records"] = len(records)
    kept = list(subsample(records, config.fraction, config.seed))
    counters["subsampled_records"] = len(kept)
    return kept


def run(config: PipelineConfig) -> dict:
    """Execute ingest -> validate -> subsample -> per-stage build ->
    shuffle/shard -> stats, and write a reproducibility manifest."""
    build_stage_plan(config.stages, corpus_ref=",".join(config.inputs))
    os.makedirs(config.out_dir, exist_ok=True)
    written: list[str] = []
    counters: Counter = Counter()
    try:
        records = load_records(config, counters)
        stats = compute_stats(records)

        stage_infos = []
        for stage_index, objective in enumerate(config.stages):
            examples = _build_pretrain_examples(records, objective, config)
            shards = shuffle_and_shard(examples, config.seed, config.shard_count)
            dataset = f"stage{stage_index}_{objective.value.lower()}"
            shard_infos = _write_shards(shards, config.out_dir, dataset, config.compress)
            written.extend(os.path.join(config.out_dir, s["file"]) for s in shard_infos)
            stage_infos.append({
                "stage": stage_index,
                "objective": objective.value,
                "example_count": len(examples),
                "shards": shard_infos,
            })

        manifest = {
            "tool": "scenetext",
            "version": __version__,
            "config": config.to_dict(),
            "config_hash": _config_hash(config),
            "seed": config.seed,
            "counters": dict(counters),
            "stats": stats.to_dict(),
            "stages": stage_infos,
        }
        manifest_path = os.path.join(config.out_dir, "manifest.json")
        with open(manifest_path, "w", encoding="utf-8") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
            fh.write("\n")
        return manifest
    except Exception:
        for path in written:
            if os.path.exists(path):
                os.remove(path)
        raise


def run_finetune(config: PipelineConfig, task: Task, ocr_included: bool = True) -> dict:
    """Fine-tuning variant of run(): one dataset instead of stage datasets."""
    os.makedirs(config.out_dir, exist_ok=True)
    counters: Counter = Counter()
    records = load_records(config, counters)
    examples = _build_finetune_examples(records, task, ocr_included, config)
    shards = shuffle_and_shard(examples, config.seed, config.shard_count)
    dataset = f"finetune_{task.value.lower()}"
    shard_infos = _write_shards(shards, config.out_dir, dataset, config.compress)
    manifest = {
        "tool": "scenetext",
        "version": __version__,
        "config": config.to_dict(),
        "config_hash": _config_hash(config),
        "seed": config.seed,
        "task": task.value,
        "ocr_included": ocr_included,
        "counters": dict(counters),
        "example_count": len(examples),
        "shards": shard_infos,
    }
    with open(os.path.join(config.out_dir, f"{dataset}_manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return manifest
