"""
Tests for reading and writing hypergraph files.
"""

import pytest

from exceptions import InputError, ParseError
from hypergraph import UniformHypergraph
from hypergraph_io import (
    format_json,
    format_text,
    parse_hypergraph,
    parse_json,
    parse_text,
    read_hypergraph,
    write_hypergraph,
)

FANO_TEXT = """# Fano plane
3 7 7
0 1 2
0 3 4
0 5 6

1 3 5
1 4 6
2 3 6
2 4 5
"""


def test_parse_text(fano):
    assert parse_text(FANO_TEXT) == fano


def test_parse_json(fano):
    assert parse_json(format_json(fano)) == fano
    assert parse_hypergraph('{"r": 2, "n": 3, "edges": [[0, 1]]}') == UniformHypergraph(r=2, n=3, edges=((0, 1),))


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("3 4 1\n0 1 x\n", 2, "integer"),
        ("3 4 1\n0 1\n", 2, "expected 3"),
        ("3 4 1\n0 1 1\n", 2, "repeats"),
        ("3 4 1\n0 1 4\n", 2, "outside"),
        ("3 4 2\n0 1 2\n# again\n2 1 0\n", 4, "first seen on line 2"),
        ("3 4 2\n0 1 2\n", 2, "declared 2"),
        ("3 4\n", 1, "header"),
    ],
)
def test_parse_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(ParseError) as info:
        parse_text(text, source="bad.hg")
    assert info.value.line == line
    assert fragment in str(info.value)
    assert str(info.value).startswith(f"bad.hg:{line}:")


def test_json_errors():
    with pytest.raises(ParseError):
        parse_json('{"r": 3, "n": 3}')
    with pytest.raises(ParseError):
        parse_json('{"r": 3, "n": 3, "edges": [[0, 1, 2], [2, 1, 0]]}')
    with pytest.raises(ParseError):
        parse_json("{not json")


def test_round_trip(tmp_path, linear_r3_small):
    for index, h in enumerate(linear_r3_small[:25]):
        for suffix in ("hg", "json"):
            path = tmp_path / f"h{index}.{suffix}"
            write_hypergraph(h, str(path))
            assert read_hypergraph(str(path)) == h
        assert parse_text(format_text(h)) == h


def test_missing_file():
    with pytest.raises(InputError):
        read_hypergraph("/nonexistent/file.hg")
