"""Prediction/gold alignment and task-level metric reports."""

import json
from dataclasses import dataclass, field
from enum import Enum

from ..errors import AlignmentError, ContractError
from .captioning import CaptionItem, bleu4, cider, rouge_l
from .vqa import VqaItem, anls, vqa_accuracy


class EvalTask(str, Enum):
    VQA = "VQA"
    VQA_ANLS = "VQA_ANLS"
    CAPTION = "CAPTION"


@dataclass
class MetricReport:
    aggregate: dict[str, float]
    per_item: list[dict] = field(default_factory=list)

    @property
    def n_items(self) -> int:
        return len(self.per_item)

    def to_json(self, include_per_item: bool = True) -> str:
        obj = {"n_items": self.n_items, "aggregate": self.aggregate}
        if include_per_item:
            obj["per_item"] = self.per_item
        return json.dumps(obj, ensure_ascii=False)


def _align(predictions: dict[str, str], golds: dict[str, dict]) -> list[str]:
    missing = sorted(set(golds) - set(predictions))
    extra = sorted(set(predictions) - set(golds))
    if missing or extra or not golds:
        orphans = missing + extra
        raise AlignmentError(
            f"prediction/gold mismatch: {len(missing)} gold ids without "
            f"predictions, {len(extra)} predictions without gold",
            orphans=orphans,
        )
    return sorted(golds)


def evaluate(predictions: dict[str, str], golds: dict[str, dict],
             task: EvalTask, tau: float = 0.5) -> MetricReport:
    """Score aligned predictions against gold entries.

    Gold entries carry "answers" (VQA tasks) or "references" (CAPTION).
    """
    ids = _align(predictions, golds)

    if task in (EvalTask.VQA, EvalTask.VQA_ANLS):
        per_item = []
        for ex_id in ids:
            answers = golds[ex_id].get("answers")
            if not answers:
                raise ContractError(f"{ex_id}: gold entry has no answers")
            row = {"example_id": ex_id}
            row["accuracy"] = vqa_accuracy(VqaItem(predictions[ex_id], tuple(answers)))
            if task is EvalTask.VQA_ANLS:
                row["anls"] = anls(predictions[ex_id], answers, tau=tau)
            per_item.append(row)
        aggregate = {"accuracy": sum(r["accuracy"] for r in per_item) / len(per_item)}
        if task is EvalTask.VQA_ANLS:
            aggregate["anls"] = sum(r["anls"] for r in per_item) / len(per_item)
        return MetricReport(aggregate=aggregate, per_item=per_item)

    if task is EvalTask.CAPTION:
        items = []
        for ex_id in ids:
            refs = golds[ex_id].get("references") or golds[ex_id].get("answers")
            if not refs:
                raise ContractError(f"{ex_id}: gold entry has no references")
            items.append(CaptionItem(predictions[ex_id], tuple(refs)))
        cider_corpus, cider_items = cider(items)
        per_item = [
            {"example_id": ex_id, "cider": c, "rougeL": rouge_l(item)}
            for ex_id, item, c in zip(ids, items, cider_items)
        ]
        aggregate = {
            "bleu4": bleu4(items),
            "rougeL": sum(r["rougeL"] for r in per_item) / len(per_item),
            "cider": cider_corpus,
        }
        return MetricReport(aggregate=aggregate, per_item=per_item)

    raise ContractError(f"unknown evaluation task {task!r}")


def read_predictions(path) -> dict[str, str]:
    """Predictions JSONL: {"example_id": str, "prediction": str}."""
    preds = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                obj = json.loads(line)
                preds[obj["example_id"]] = obj["prediction"]
    return preds


def read_golds(path) -> dict[str, dict]:
    """Gold JSONL: fine-tune eval examples or {"example_id", "answers"/"references"}."""
    golds = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                obj = json.loads(line)
                golds[obj["example_id"]] = obj
    return golds
