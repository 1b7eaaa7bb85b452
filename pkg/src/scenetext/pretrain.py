"""Pre-training example builders: OCR, SPLITOCR, CAP, SPLITCAP.

SPLITOCR splits the spatially ordered OCR tokens at a uniform random point;
the prefix becomes extra model input and the suffix the generation target.
OCR is the degenerate case with an empty prefix. CAP targets the caption
conditioned on the full ordered OCR; SPLITCAP additionally feeds a caption
prefix and targets the remainder.
"""

import json
import random
from dataclasses import dataclass, field
from enum import Enum

from .errors import ConfigError, SkipRecord
from .hashing import derive_rng
from .ordering import order_tokens
from .records import Record
from .textformat import DEFAULT_FORMAT, TextFormat, render_input


class Objective(str, Enum):
    OCR = "OCR"
    SPLITOCR = "SPLITOCR"
    CAP = "CAP"
    SPLITCAP = "SPLITCAP"

    @classmethod
    def from_tag(cls, tag: str) -> "Objective":
        try:
            return cls(tag.upper())
        except ValueError:
            raise ConfigError(f"unknown objective {tag!r}; expected one of "
                              f"{[o.value for o in cls]}") from None


@dataclass(frozen=True)
class ObjectiveConfig:
    fmt: TextFormat = DEFAULT_FORMAT
    overlap_threshold: float = 0.5
    pass_index: int = 0


DEFAULT_CONFIG = ObjectiveConfig()


@dataclass(frozen=True)
class PretrainExample:
    example_id: str
    image_id: str
    objective: Objective
    prompt: str
    input_ocr: tuple[str, ...]
    input_caption_prefix: str
    target: str

    def input_text(self, fmt: TextFormat = DEFAULT_FORMAT) -> str:
        """Rendered model input; byte-compatible with the fine-tune formats."""
        if self.objective in (Objective.OCR, Objective.SPLITOCR):
            # the plain-OCR case conditions on the image and prompt only
            ocr_text = fmt.token_separator.join(self.input_ocr) if self.input_ocr else None
            return render_input(self.prompt, fmt, ocr_text=ocr_text)
        ocr_text = fmt.token_separator.join(self.input_ocr)
        prefix = self.input_caption_prefix or None
        return render_input(self.prompt, fmt, caption_prefix=prefix, ocr_text=ocr_text)

    def to_json(self) -> str:
        return json.dumps(
            {
                "example_id": self.example_id,
                "image_id": self.image_id,
                "objective": self.objective.value,
                "prompt": self.prompt,
                "input_ocr": list(self.input_ocr),
                "input_caption_prefix": self.input_caption_prefix,
                "target": self.target,
            },
            ensure_ascii=False,
        )


def rng_for(seed: int, image_id: str, objective: Objective, pass_index: int = 0) -> random.Random:
    """Per-record RNG; identical (seed, image_id) gives identical draws
    regardless of processing order or thread count."""
    return derive_rng(seed, image_id, objective.value, str(pass_index))


def sample_split_point(n: int, rng: random.Random) -> int:
    """Uniform split point in {0..n-1}; k=0 means an empty input part and
    the target part is never empty."""
    if n < 1:
        raise SkipRecord("cannot split an empty token sequence")
    return rng.randrange(n)


def _example_id(record: Record, objective: Objective, config: ObjectiveConfig) -> str:
    return f"{record.image_id}/{objective.value.lower()}/{config.pass_index}"


def build_splitocr(record: Record, rng: random.Random,
                   config: ObjectiveConfig = DEFAULT_CONFIG) -> PretrainExample:
    if not record.ocr:
        raise SkipRecord(f"{record.image_id}: no OCR tokens for SPLITOCR")
    texts = order_tokens(record.ocr, config.overlap_threshold).texts
    k = sample_split_point(len(texts), rng)
    sep = config.fmt.token_separator
    return PretrainExample(
        example_id=_example_id(record, Objective.SPLITOCR, config),
        image_id=record.image_id,
        objective=Objective.SPLITOCR,
        prompt=config.fmt.ocr_prompt,
        input_ocr=tuple(texts[:k]),
        input_caption_prefix="",
        target=sep.join(texts[k:]),
    )


def build_ocr(record: Record, config: ObjectiveConfig = DEFAULT_CONFIG) -> PretrainExample:
    if not record.ocr:
        raise SkipRecord(f"{record.image_id}: no OCR tokens for OCR")
    texts = order_tokens(record.ocr, config.overlap_threshold).texts
    return PretrainExample(
        example_id=_example_id(record, Objective.OCR, config),
        image_id=record.image_id,
        objective=Objective.OCR,
        prompt=config.fmt.ocr_prompt,
        input_ocr=(),
        input_caption_prefix="",
        target=config.fmt.token_separator.join(texts),
    )


def build_cap(record: Record, config: ObjectiveConfig = DEFAULT_CONFIG) -> PretrainExample:
    if not record.caption:
        raise SkipRecord(f"{record.image_id}: no caption for CAP")
    texts = order_tokens(record.ocr, config.overlap_threshold).texts
    return PretrainExample(
        example_id=_example_id(record, Objective.CAP, config),
        image_id=record.image_id,
        objective=Objective.CAP,
        prompt=config.fmt.caption_prompt,
        input_ocr=tuple(texts),
        input_caption_prefix="",
        target=record.caption,
    )


def build_splitcap(record: Record, rng: random.Random,
                   config: ObjectiveConfig = DEFAULT_CONFIG) -> PretrainExample:
    if not record.caption or not record.caption.split():
        raise SkipRecord(f"{record.image_id}: no caption for SPLITCAP")
    words = record.caption.split()
    k = sample_split_point(len(words), rng)
    texts = order_tokens(record.ocr, config.overlap_threshold).texts
    return PretrainExample(
        example_id=_example_id(record, Objective.SPLITCAP, config),
        image_id=record.image_id,
        objective=Objective.SPLITCAP,
        prompt=config.fmt.caption_prompt,
        input_ocr=tuple(texts),
        input_caption_prefix=" ".join(words[:k]),
        target=" ".join(words[k:]),
    )


def build_example(record: Record, objective: Objective, seed: int,
                  config: ObjectiveConfig = DEFAULT_CONFIG) -> PretrainExample:
    """Dispatch on objective with the per-record derived RNG."""
    rng = rng_for(seed, record.image_id, objective, config.pass_index)
    if objective is Objective.SPLITOCR:
        return build_splitocr(record, rng, config)
    if objective is Objective.OCR:
        return build_ocr(record, config)
    if objective is Objective.CAP:
        return build_cap(record, config)
    if objective is Objective.SPLITCAP:
        return build_splitcap(record, rng, config)
    raise ConfigError(f"unknown objective {objective!r}")


@dataclass(frozen=True)
class StagePlan:
    """Ordered list of per-objective dataset builds for sequential training."""

    stages: tuple[Objective, ...]
    corpus_ref: str
    dataset_names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not self.dataset_names:
            object.__setattr__(
                self,
                "dataset_names",
                tuple(f"stage{i}_{obj.value.lower()}" for i, obj in enumerate(self.stages)),
            )


def build_stage_plan(stages, corpus_ref: str) -> StagePlan:
    """Validate and name the per-stage output datasets, in training order."""
    if not stages:
        raise ConfigError("stage plan must contain at least one objective")
    resolved = tuple(s if isinstance(s, Objective) else Objective.from_tag(s) for s in stages)
    return StagePlan(stages=resolved, corpus_ref=corpus_ref)
