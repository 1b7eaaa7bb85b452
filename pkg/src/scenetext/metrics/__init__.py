from ..kernels import levenshtein
from .captioning import CaptionItem, bleu4, cider, rouge_l, tokenize
from .report import EvalTask, MetricReport, evaluate, read_golds, read_predictions
from .vqa import VqaItem, anls, normalize_answer, vqa_accuracy

__all__ = [
    "levenshtein",
    "CaptionItem",
    "bleu4",
    "cider",
    "rouge_l",
    "tokenize",
    "EvalTask",
    "MetricReport",
    "evaluate",
    "read_golds",
    "read_predictions",
    "VqaItem",
    "anls",
    "normalize_answer",
    "vqa_accuracy",
]
