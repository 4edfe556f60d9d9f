import pytest

import radproj


def plane(q):
    return radproj.Space(radproj.Field(q), 2)


def test_field_and_space():
    f = radproj.Field(2, 2)
    assert f.q == 4
    assert f.modulus == [1, 1, 1]
    assert f.mul(2, f.inv(2)) == 1
    s = radproj.Space(radproj.Field(3), 2)
    assert (s.num_points, s.num_lines, s.qbinom) == (9, 12, 4)
    assert s.pencil_size([1, 2]) == 4
    assert s.unpack(s.pack([1, 2])) == [1, 2]
    assert sorted(s.line_points([0, 0], [1, 1])) == [[0, 0], [1, 1], [2, 2]]


def test_errors_surface_as_python_exceptions():
    with pytest.raises(ValueError):
        radproj.Field(4)
    with pytest.raises(ValueError):
        radproj.Space(radproj.Field(2, 13), 2)
    with pytest.raises(radproj.GenerationError):
        radproj.random_set(plane(7), 16, 1, max_collinear=3)


def test_projection_counts():
    s = plane(3)
    line = radproj.PointSet(s, [[0, 0], [1, 0], [2, 0]])
    assert radproj.projection_size(line, [0, 1]) == 3
    assert radproj.projection_size(line, [1, 0]) == 1
    e = radproj.random_set(plane(7), 20, 5)
    for x in range(7):
        for y in range(7):
            assert radproj.projection_size(e, [x, y]) == radproj.projection_size_oracle(e, [x, y])


def test_subplane():
    e = radproj.subfield_subplane(3)
    assert len(e) == 9
    for y in e.points():
        assert radproj.projection_size(e, y) == 4


def test_reports():
    e = radproj.random_set(plane(5), 12, 3)
    r = radproj.line_sum_identity(e)
    assert r["hypotheses_met"] and r["holds"] == "yes"
    cs = radproj.just_cs(e, "3/2")
    assert cs["holds"] == "yes"
    assert [x["holds"] for x in radproj.incidence_sums(e, 2) if x["hypotheses_met"]] == ["yes"] * sum(
        x["hypotheses_met"] for x in radproj.incidence_sums(e, 2)
    )


def test_verify_smoke_is_clean():
    out = radproj.verify(radproj.smoke_config())
    assert out["reports"]
    assert all(r["holds"] != "no" for r in out["reports"] if r["hypotheses_met"])
