import pytest

import matchhom


def test_face_counts():
    assert matchhom.face_counts(matching=5) == [1, 10, 15]
    assert matchhom.face_counts(bounded="2^7")[:3] == [1, 28, 336]
    assert len(matchhom.faces(0, bounded="2^3")) == 6


def test_homology():
    h = matchhom.homology(matching=7)
    assert h["groups"][1] == "Z_3"
    assert h["groups"][2] == "Z^20"
    assert matchhom.homology(matching=8, mod=2)["groups"][2] == "Z^132"


def test_quotient():
    q = matchhom.quotient_homology(6, "2^3")
    assert q["gamma"]["groups"] == matchhom.homology(bounded="2^3")["groups"]
    counts = matchhom.orbit_counts(6, "2^3")
    assert counts[2] == {"degree": 1, "free": 9, "order2": 3, "gamma": 9, "delta": 3}


def test_class_order():
    z = "chain z\ndegree 0\nterms 2\n1 1-2\n-1 2-3\nend\n"
    assert matchhom.class_order(z, matching=3) == "infinite"
    assert matchhom.gamma_prime().startswith("chain gamma_prime\ndegree 4\nterms 48\n")


def test_checks():
    assert matchhom.verify("gamma-lift")["status"] == "pass"
    assert matchhom.verify("edge-split", n=7)["status"] == "pass"
    assert matchhom.verify("quotient-sequence", n=4, lambda_="2,2")["status"] == "pass"
    assert matchhom.nu(14) == 4


def test_errors():
    with pytest.raises(ValueError):
        matchhom.homology(matching=7, bounded="2^7")
    with pytest.raises(ValueError):
        matchhom.verify("nope")
