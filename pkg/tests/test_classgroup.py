import pytest

from topograph.classgroup import (
    ambiguous_form_A,
    compose,
    enumerate_classes,
    find_diform_for_classes,
    principal_form,
    represents,
    verify_red_blue,
)
from topograph.classical import cycle_fingerprint
from topograph.errors import (
    DivisibilityError,
    InvalidDiscriminantError,
    NotPrimitiveError,
    PreconditionError,
)


def test_definite_enumeration_fixtures():
    t = enumerate_classes(-20)
    assert t.reps == [(1, 0, 5), (2, 2, 3)]
    assert t.h == 2
    assert enumerate_classes(-8).reps == [(1, 0, 2)]


def test_indefinite_enumeration_delta_12():
    t = enumerate_classes(12)
    # exactly one class contains (1, 2, -2)
    target = cycle_fingerprint((1, 2, -2))
    assert t.classes.count(target) == 1


def test_invalid_discriminants():
    for bad in (0, 7, -5):
        with pytest.raises(InvalidDiscriminantError):
            enumerate_classes(bad)
    with pytest.raises(InvalidDiscriminantError):
        enumerate_classes(16)  # positive square


def test_identity_law():
    t = enumerate_classes(-20)
    e = t.identity_index()
    for i in range(t.h):
        assert t.compose_indices(e, i) == i


def test_two_torsion_in_cl_minus_20():
    t = enumerate_classes(-20)
    i = t.class_index((2, 2, 3))
    assert t.compose_indices(i, i) == t.identity_index()


def test_inverse_is_middle_negation():
    t = enumerate_classes(-84)
    for a, b, c in t.reps:
        i = t.class_index((a, b, c))
        j = t.class_index((a, -b, c))
        assert t.compose_indices(i, j) == t.identity_index()


def test_compose_rejects_imprimitive():
    with pytest.raises(NotPrimitiveError):
        compose((2, 0, 2), (1, 0, 4))


def test_ambiguous_form_fixtures():
    assert ambiguous_form_A(2, -20) == (2, 2, 3)
    assert ambiguous_form_A(2, -8) == (2, 0, 1)
    for sigma, d in ((2, -20), (2, -8), (3, 24), (3, -3)):
        a, b, c = ambiguous_form_A(sigma, d)
        assert b * b - 4 * a * c == d
        assert a == sigma


def test_ambiguous_form_divisibility_error():
    with pytest.raises(DivisibilityError):
        ambiguous_form_A(2, -3)


def test_represents():
    assert represents((2, 2, 3), 2)
    assert not represents((1, 0, 5), 2)


def test_verify_red_blue_definite_fixture():
    report = verify_red_blue(2, 1, 1, 3)
    assert report["delta"] == -20
    assert report["red"] == [1, 2, 6]
    assert report["blue"] == [2, 2, 3]
    assert report["relation_holds"] is True


def test_verify_red_blue_indefinite_fixture():
    report = verify_red_blue(3, 1, 0, -2)
    assert report["delta"] == 24
    assert report["red"] == [1, 0, -6]
    assert report["blue"] == [3, 0, -2]
    assert report["relation_holds"] is True


def test_verify_red_blue_precondition():
    with pytest.raises(PreconditionError):
        verify_red_blue(2, 2, 1, 4)  # gcd(a, c) = 2


def test_converse_search():
    t = enumerate_classes(-20)
    i1 = t.class_index((2, 2, 3))
    i2 = t.class_index((1, 0, 5))
    found = find_diform_for_classes(2, -20, i1, i2, t)
    assert found is not None
    a, b, c = found
    assert 2 * (2 * b * b - 4 * a * c) == -20


def test_to_json_shape():
    t = enumerate_classes(-20)
    t.build_table()
    data = t.to_json()
    assert data["h"] == 2
    assert data["table"] == [[0, 1], [1, 0]]
    assert data["A_class_index"]["2"] == t.class_index((2, 2, 3))
    assert data["A_class_index"]["3"] is None


def test_principal_form():
    assert principal_form(-20) == (1, 0, 5)
    assert principal_form(-3) == (1, 1, 1)
    assert principal_form(13) == (1, 1, -3)
