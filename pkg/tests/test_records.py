import pytest

from scenetext.errors import ParseError, SchemaError
from scenetext.records import (
    BBox,
    CorpusValidator,
    OcrToken,
    parse_record,
    serialize_record,
    validate_record,
)

from conftest import make_record, make_token


def test_parse_minimal_record():
    rec = parse_record('{"image_id":"a","ocr":[{"text":"STOP","bbox":[4,4,40,12]}]}')
    assert rec.image_id == "a"
    assert len(rec.ocr) == 1
    assert rec.ocr[0].text == "STOP"
    assert rec.ocr[0].bbox == BBox(4, 4, 40, 12)
    assert rec.ocr[0].confidence == 1.0


def test_parse_empty_ocr_is_valid():
    rec = parse_record('{"image_id":"b","ocr":[]}')
    assert rec.ocr == ()


def test_parse_empty_token_text_is_schema_error():
    with pytest.raises(SchemaError):
        parse_record('{"image_id":"c","ocr":[{"text":"","bbox":[0,0,1,1]}]}')


def test_parse_malformed_json_reports_offset():
    with pytest.raises(ParseError) as exc:
        parse_record('{"image_id": "a", ')
    assert exc.value.offset is not None


def test_parse_missing_image_id():
    with pytest.raises(SchemaError):
        parse_record('{"ocr":[]}')


def test_parse_nonpositive_bbox_dims():
    with pytest.raises(SchemaError):
        parse_record('{"image_id":"a","ocr":[{"text":"x","bbox":[0,0,0,5]}]}')
    with pytest.raises(SchemaError):
        parse_record('{"image_id":"a","ocr":[{"text":"x","bbox":[0,0,5,-1]}]}')


def test_parse_ignores_unknown_fields_and_field_order():
    a = parse_record('{"image_id":"a","ocr":[],"future_field":123}')
    b = parse_record('{"ocr":[],"image_id":"a"}')
    assert a == b


def test_parse_full_record():
    rec = parse_record(
        '{"image_id":"a","image_uri":"gs://x","image_size":[640,480],'
        '"caption":"a sign","ocr":[{"text":"GO","bbox":[1,2,3,4],"confidence":0.9}],'
        '"qa":[{"question":"what?","answers":["go","go"]}]}'
    )
    assert rec.image_size == (640, 480)
    assert rec.caption == "a sign"
    assert rec.qa[0].question == "what?"
    assert rec.ocr[0].confidence == 0.9


def test_roundtrip_serialize_parse():
    line = (
        '{"image_id":"a","image_size":[100,100],"caption":"c",'
        '"ocr":[{"text":"GO","bbox":[1,2,3,4],"confidence":0.5}],'
        '"qa":[{"question":"q","answers":["x"]}]}'
    )
    rec = parse_record(line)
    assert parse_record(serialize_record(rec)) == rec


def test_parse_is_pure():
    line = '{"image_id":"a","ocr":[{"text":"GO","bbox":[1,2,3,4]}]}'
    assert parse_record(line) == parse_record(line)


def test_validate_bbox_out_of_bounds():
    rec = make_record(ocr=[make_token("x", x=95, y=0, w=10, h=5)], image_size=(100, 100))
    report = validate_record(rec)
    assert "bbox_out_of_bounds" in report.violations


def test_validate_wellformed_record_is_clean():
    rec = make_record(ocr=[make_token("x", x=5, y=5, w=10, h=5)], image_size=(100, 100))
    assert validate_record(rec).ok


def test_validate_confidence_range():
    rec = make_record(ocr=[make_token("x", confidence=1.3)])
    assert "confidence_range" in validate_record(rec).violations


def test_validator_flags_duplicate_image_id():
    v = CorpusValidator()
    rec = make_record(image_id="dup")
    assert v.validate(rec).ok
    assert "duplicate_image_id" in v.validate(rec).violations


def test_token_rejects_interior_newline():
    with pytest.raises(SchemaError):
        OcrToken(text="a\nb", bbox=BBox(0, 0, 1, 1))
