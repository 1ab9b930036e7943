import json

import pytest

from makerbreaker.board import a_family
from makerbreaker.engine import BiasSpec, GameRecord
from makerbreaker.errors import InvalidParameters
from makerbreaker.games import GameSetup
from makerbreaker.verify import LCycleCertificate, min_degree, verify_lcycle, verify_rainbow, verify_record


def test_perfect_matching_example():
    cert = verify_lcycle([(0, 1, 6), (2, 3, 7), (4, 5, 8)], 9, 3, 0)
    assert cert is not None and cert.is_valid(9, 3)
    assert sorted(cert.edges) == [(0, 1, 6), (2, 3, 7), (4, 5, 8)]


def test_overlapping_edges_are_not_a_matching():
    assert verify_lcycle([(0, 1, 6), (1, 2, 7), (3, 4, 8)], 9, 3, 0) is None


def test_general_matching_search_small_n():
    cert = verify_lcycle([(0, 4, 8), (1, 2, 3), (5, 6, 7), (0, 1, 2)], 9, 3, 0)
    assert cert is not None and sorted(cert.edges) == [(0, 4, 8), (1, 2, 3), (5, 6, 7)]


def test_loose_cycle_from_bijection():
    fam = a_family(8, 3, 1)
    phi = [2, 0, 3, 1]
    edges = [tuple(sorted(fam.sets[i] + (fam.B[phi[i]],))) for i in range(fam.D)]
    cert = verify_lcycle(edges, 8, 3, 1)
    assert cert is not None and cert.is_valid(8, 3, edges)
    # consecutive edges share exactly one vertex, read off the order
    for i in range(4):
        a, b = set(cert.edges[i]), set(cert.edges[(i + 1) % 4])
        assert len(a & b) == 1


def test_missing_matching_edge():
    fam = a_family(8, 3, 1)
    edges = [tuple(sorted(fam.sets[i] + (fam.B[0],))) for i in range(fam.D)]
    assert verify_lcycle(edges, 8, 3, 1) is None


def test_malformed_edges_raise():
    with pytest.raises(InvalidParameters):
        verify_lcycle([(0, 2, 5), (1, 3, 6)], 8, 3, 1)
    with pytest.raises(InvalidParameters):
        verify_lcycle([(0, 1, 6)], 9, 3, 2)


def test_certificate_checks():
    c = LCycleCertificate((0, 1, 2, 3, 4, 5), ((0, 1, 2), (3, 4, 5)), 0)
    assert c.is_valid(6, 3)
    assert not LCycleCertificate((0, 1, 2, 3, 4, 5), ((0, 1, 2), (2, 3, 4)), 0).is_valid(6, 3)
    assert not c.is_valid(6, 3, [(0, 1, 2)])
    assert LCycleCertificate.from_json(c.to_json()) == c


def _lcycle_win(game="lcycle-rainbow", seed=0):
    setup = GameSetup(game, 24, 3, 1, m=3, bias=BiasSpec(b=1))
    rec = setup.play(seed)
    assert rec.outcome == "MakerWin", rec.failure
    return rec


def test_rainbow_from_colouring_rule():
    rec = _lcycle_win()
    assert verify_rainbow(rec)
    assert verify_rainbow(json.loads(rec.dumps()))
    assert len(set(rec.certificate["colors"])) == len(rec.certificate["edges"])


def test_repeated_colour_fails():
    rec = _lcycle_win()
    d = json.loads(rec.dumps())
    first = {tuple(e) for e in d["certificate"]["edges"][:2]}
    for mv in d["moves"]:
        if mv["player"] == "M" and tuple(mv["edges"][0]) in first:
            mv["color"] = 0
    assert not verify_rainbow(d)


def test_empty_certificate_is_rainbow():
    assert verify_rainbow({"certificate": None, "moves": []})
    assert verify_rainbow({"certificate": {"type": "lcycle", "edges": []}, "moves": []})


def test_min_degree():
    assert min_degree([(0, 1, 2), (2, 3, 4)], 5) == 1
    assert min_degree([(0, 1, 2)], 5) == 0


@pytest.mark.parametrize("game,n,l,b", [("degree", 20, 0, 1), ("rank", 12, 0, 2), ("bhc", 9, 0, 1),
                                        ("lcycle", 24, 1, 1)])
def test_verify_record_roundtrip(game, n, l, b):
    setup = GameSetup(game, n, 3, l, m=2, bias=BiasSpec(b=b))
    rec = setup.play(5)
    assert rec.outcome == "MakerWin" and rec.stats["violations"] == []
    assert verify_record(GameRecord.loads(rec.dumps())) == []


def test_verify_record_catches_forged_certificate():
    rec = GameSetup("bhc", 9, 3, m=2, bias=BiasSpec(b=1)).play(5)
    d = json.loads(rec.dumps())
    d["certificate"]["order"] = d["certificate"]["order"][::-1][1:] + d["certificate"]["order"][-1:]
    d["certificate"]["edges"][0] = d["certificate"]["edges"][1]
    assert verify_record(GameRecord.from_json(d))
