import pytest

from pnoninner import families
from pnoninner.presentation_io import ParseError, parse_presentation, print_presentation


def test_parse_e5_style():
    G = parse_presentation("p 5\ngens 3\ncomm 2 1 = g3\n")
    assert G.p == 5 and G.n == 3
    assert G.comm_rel[(2, 1)] == (0, 0, 1)


def test_parse_w5_file():
    G = parse_presentation("p 5\ngens 4\ncomm 2 1 = g3\ncomm 3 1 = g4\n")
    W5 = families.maximal_class_p4(5)
    assert G == W5


def test_parse_rejects_even_p():
    with pytest.raises(ParseError):
        parse_presentation("p 4\ngens 2\n")


def test_parse_rejects_bad_syntax():
    with pytest.raises(ParseError) as ei:
        parse_presentation("p 5\ngens 2\npow 1 = g2^^3\n")
    assert "line 3" in str(ei.value)
    with pytest.raises(ParseError):
        parse_presentation("p 5\ngens 2\nfrob 1\n")
    with pytest.raises(ParseError):
        parse_presentation("p 5\npow 1 = g2\ngens 2\n")  # relation before gens


def test_parse_rejects_semantic_violation():
    # comm referencing an index <= j
    with pytest.raises(ParseError) as ei:
        parse_presentation("p 5\ngens 3\ncomm 2 1 = g1\n")
    assert "indices > 2" in str(ei.value)


def test_parse_out_of_range_generator():
    with pytest.raises(ParseError):
        parse_presentation("p 5\ngens 2\npow 1 = g3\n")


def test_comments_and_blanks():
    G = parse_presentation("# header\n\np 3  # prime\ngens 3\n# done\ncomm 2 1 = g3^2\n")
    assert G == families.extraspecial(3, 1)


def test_trivial_word():
    G = parse_presentation("p 3\ngens 2\npow 1 = 1\n")
    assert not G.power_rel


def test_roundtrip_families(e5, w5, es32, fc4_3, c9, e5xc5):
    for G in (e5, w5, es32, fc4_3, c9, e5xc5):
        text = print_presentation(G)
        G2 = parse_presentation(text)
        assert G2 == G
        assert print_presentation(G2) == text


def test_word_with_repeated_factor():
    # g3*g3 accumulates to g3^2
    G = parse_presentation("p 3\ngens 3\ncomm 2 1 = g3*g3\n")
    assert G.comm_rel[(2, 1)] == (0, 0, 2)
