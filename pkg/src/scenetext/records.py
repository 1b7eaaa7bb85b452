"""Record schema, JSONL parsing, and stream validation.

Input is one JSON object per line:
{"image_id": str, "image_uri": str?, "image_size": [w,h]?, "caption": str?,
 "ocr": [{"text": str, "bbox": [x,y,w,h], "confidence": float?}],
 "qa": [{"question": str, "answers": [str,...]}]?}
"""

import json
from dataclasses import dataclass, field

from .errors import ParseError, SchemaError


@dataclass(frozen=True)
class BBox:
    """Axis-aligned box in image pixels: left edge, top edge, width, height."""

    x: float
    y: float
    w: float
    h: float

    def __post_init__(self):
        if self.w <= 0 or self.h <= 0:
            raise SchemaError(f"bbox width/height must be positive, got {self}")
        if self.x < 0 or self.y < 0:
            raise SchemaError(f"bbox origin must be non-negative, got {self}")

    @property
    def y_center(self) -> float:
        return self.y + self.h / 2


@dataclass(frozen=True)
class OcrToken:
    """One recognized text span with its box and recognizer confidence.

    Confidence is not range-checked here: out-of-range values are reported
    by the validator, not rejected at parse time.
    """

    text: str
    bbox: BBox
    confidence: float = 1.0

    def __post_init__(self):
        if not self.text.strip():
            raise SchemaError("OCR token text must be non-empty")
        if "\n" in self.text:
            raise SchemaError("OCR token text must not contain newlines")


@dataclass(frozen=True)
class QaAnnotation:
    question: str
    answers: tuple[str, ...]

    def __post_init__(self):
        if not self.question:
            raise SchemaError("question must be non-empty")
        if not self.answers:
            raise SchemaError("answers list must be non-empty")


@dataclass(frozen=True)
class Record:
    """One corpus entry: image reference, optional caption, OCR, optional QA."""

    image_id: str
    image_uri: str | None = None
    image_size: tuple[int, int] | None = None
    caption: str | None = None
    ocr: tuple[OcrToken, ...] = ()
    qa: tuple[QaAnnotation, ...] | None = None


def _parse_bbox(raw) -> BBox:
    if not isinstance(raw, (list, tuple)) or len(raw) != 4:
        raise SchemaError(f"bbox must be [x,y,w,h], got {raw!r}")
    x, y, w, h = raw
    for v in (x, y, w, h):
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            raise SchemaError(f"bbox coordinates must be numbers, got {raw!r}")
    return BBox(float(x), float(y), float(w), float(h))


def _parse_token(raw) -> OcrToken:
    if not isinstance(raw, dict):
        raise SchemaError(f"ocr entry must be an object, got {raw!r}")
    if "text" not in raw or "bbox" not in raw:
        raise SchemaError("ocr entry requires 'text' and 'bbox'")
    text = raw["text"]
    if not isinstance(text, str):
        raise SchemaError("ocr token text must be a string")
    conf = raw.get("confidence", 1.0)
    if not isinstance(conf, (int, float)) or isinstance(conf, bool):
        raise SchemaError("ocr token confidence must be a number")
    return OcrToken(text=text, bbox=_parse_bbox(raw["bbox"]), confidence=float(conf))


def _parse_qa(raw) -> QaAnnotation:
    if not isinstance(raw, dict) or "question" not in raw or "answers" not in raw:
        raise SchemaError("qa entry requires 'question' and 'answers'")
    answers = raw["answers"]
    if not isinstance(answers, list) or not all(isinstance(a, str) for a in answers):
        raise SchemaError("answers must be a list of strings")
    return QaAnnotation(question=raw["question"], answers=tuple(answers))


def parse_record(line: str) -> Record:
    """Parse one JSONL line into a Record.

    Unknown fields are ignored. Raises ParseError for malformed JSON (with
    the byte offset) and SchemaError for schema violations.
    """
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        offset = len(line[: exc.pos].encode("utf-8"))
        raise ParseError(f"malformed JSON: {exc.msg}", offset=offset) from exc
    if not isinstance(obj, dict):
        raise SchemaError("record must be a JSON object")
    if "image_id" not in obj or not isinstance(obj["image_id"], str) or not obj["image_id"]:
        raise SchemaError("record requires a non-empty string 'image_id'")

    image_size = None
    if obj.get("image_size") is not None:
        raw = obj["image_size"]
        if not isinstance(raw, (list, tuple)) or len(raw) != 2:
            raise SchemaError("image_size must be [width, height]")
        image_size = (int(raw[0]), int(raw[1]))

    ocr_raw = obj.get("ocr", [])
    if not isinstance(ocr_raw, list):
        raise SchemaError("ocr must be a list")

    qa = None
    if obj.get("qa") is not None:
        if not isinstance(obj["qa"], list):
            raise SchemaError("qa must be a list")
        qa = tuple(_parse_qa(q) for q in obj["qa"])

    caption = obj.get("caption")
    if caption is not None and not isinstance(caption, str):
        raise SchemaError("caption must be a string")

    return Record(
        image_id=obj["image_id"],
        image_uri=obj.get("image_uri"),
        image_size=image_size,
        caption=caption,
        ocr=tuple(_parse_token(t) for t in ocr_raw),
        qa=qa,
    )


def serialize_record(record: Record) -> str:
    """Inverse of parse_record; emits one compact JSON line."""
    obj: dict = {"image_id": record.image_id}
    if record.image_uri is not None:
        obj["image_uri"] = record.image_uri
    if record.image_size is not None:
        obj["image_size"] = list(record.image_size)
    if record.caption is not None:
        obj["caption"] = record.caption
    obj["ocr"] = [
        {"text": t.text, "bbox": [t.bbox.x, t.bbox.y, t.bbox.w, t.bbox.h], "confidence": t.confidence}
        for t in record.ocr
    ]
    if record.qa is not None:
        obj["qa"] = [{"question": q.question, "answers": list(q.answers)} for q in record.qa]
    return json.dumps(obj, ensure_ascii=False)


@dataclass
class ValidationReport:
    image_id: str
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


class CorpusValidator:
    """Streaming validator; remembers seen image_ids to flag duplicates."""

    def __init__(self):
        self._seen: set[str] = set()

    def validate(self, record: Record) -> ValidationReport:
        report = ValidationReport(image_id=record.image_id)
        if record.image_id in self._seen:
            report.violations.append("duplicate_image_id")
        self._seen.add(record.image_id)
        for tok in record.ocr:
            if not 0.0 <= tok.confidence <= 1.0:
                report.violations.append("confidence_range")
            if record.image_size is not None:
                width, height = record.image_size
                if tok.bbox.x + tok.bbox.w > width or tok.bbox.y + tok.bbox.h > height:
                    report.violations.append("bbox_out_of_bounds")
        return report


def validate_record(record: Record) -> ValidationReport:
    """Single-record validation without duplicate tracking."""
    return CorpusValidator().validate(record)
