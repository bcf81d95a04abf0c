from importlib.resources import files

import pytest

from reqanaphora.errors import FixtureMissError
from reqanaphora.fixtures import (
    GOLDEN_FILENAME,
    GoldenAnnotationSet,
    fixture_analyzer,
    golden_source_texts,
    regenerate_golden,
)
from reqanaphora.synth import WORKED_EXAMPLE_SPEC


def test_replay_is_deterministic(golden):
    fa = fixture_analyzer(golden)
    text = WORKED_EXAMPLE_SPEC.splitlines()[0].split(":", 1)[1].strip()
    assert fa.analyze_text(text) == fa.analyze_text(text)
    assert fa.analyze_text("  " + text.replace(" ", "   ")) == fa.analyze_text(text)


def test_unknown_text_misses(golden):
    with pytest.raises(FixtureMissError, match="never annotated"):
        fixture_analyzer(golden).analyze_text("This sentence was never annotated.")


def test_covers_every_source_text(golden):
    assert all(t in golden for t in golden_source_texts())
    assert len(golden) == len(set(golden_source_texts()))


def test_regeneration_is_byte_identical():
    committed = files("reqanaphora").joinpath("data", GOLDEN_FILENAME).read_text(encoding="utf-8")
    assert regenerate_golden().dumps() == committed


def test_dump_load_round_trip(golden, tmp_path):
    golden.dump(tmp_path / "g.jsonl")
    again = GoldenAnnotationSet.load(tmp_path / "g.jsonl")
    assert again.dumps() == golden.dumps()
    assert again.backend == golden.backend


def test_corrupt_file_rejected():
    with pytest.raises(ValueError):
        GoldenAnnotationSet.loads('{"not": "a record"}\n')
