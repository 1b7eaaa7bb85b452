import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from scenetext.records import BBox, OcrToken, QaAnnotation, Record


def make_token(text, x=0.0, y=0.0, w=10.0, h=10.0, confidence=1.0):
    return OcrToken(text=text, bbox=BBox(x, y, w, h), confidence=confidence)


def make_record(image_id="img", ocr=(), caption=None, qa=None, image_size=None):
    return Record(image_id=image_id, ocr=tuple(ocr), caption=caption,
                  qa=qa, image_size=image_size)


_WORDS = ["stop", "exit", "open", "sale", "cafe", "menu", "park", "slow",
          "taxi", "shop", "north", "ave", "st", "24", "7", "free", "wifi"]


def random_layout_record(rng: random.Random, image_id="img", min_tokens=1,
                         max_tokens=12, with_caption=False):
    """Record with tokens scattered over a 1000x1000 plane."""
    n = rng.randint(min_tokens, max_tokens)
    tokens = [
        make_token(
            rng.choice(_WORDS),
            x=rng.uniform(0, 900),
            y=rng.uniform(0, 900),
            w=rng.uniform(5, 90),
            h=rng.uniform(5, 40),
        )
        for _ in range(n)
    ]
    caption = None
    if with_caption:
        caption = " ".join(rng.choice(_WORDS) for _ in range(rng.randint(1, 12)))
    return make_record(image_id=image_id, ocr=tokens, caption=caption)


@pytest.fixture
def rng():
    return random.Random(1234)
