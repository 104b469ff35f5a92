"""Smoke test for the hgm_py extension module."""

import json

import hgm_py


def main():
    f7 = hgm_py.Field(7)
    assert (f7.q, f7.p, f7.k) == (7, 7, 1)
    assert abs(f7.gauss(0) + 1) < 1e-12
    for m in range(1, 6):
        assert abs(abs(f7.gauss(m)) ** 2 - 7) < 1e-9

    t = hgm_py.GammaTriple([-3, 1, 1, 1])
    assert t.params() == (["1/3", "2/3"], ["1", "1"])
    assert abs(t.hypersum(f7, 1) - 1) < 1e-9
    twisted = hgm_py.GammaTriple([-1, -1, 1, 1], [1, -1, 0, 0], 3)
    assert twisted.params() == t.params()
    assert abs(hgm_py.hypersum_params(["1/3", "2/3"], ["1", "1"], hgm_py.Field(5), 2).imag) < 1e-9

    for u in range(1, 7):
        count = hgm_py.dwork_count(2, f7, u)
        assert count.rounded == hgm_py.bf_projective_dwork(2, f7, u)
    assert int(hgm_py.dwork_count(2, f7, 1)) == 21

    f13 = hgm_py.Field(13)
    k3 = hgm_py.dwork_count(3, f13, 2)
    assert sorted(k for _, k in k3.classes()) == [1, 3, 3, 3, 6]

    quad = hgm_py.Hypersurface(f7, [[0, 2, 0, 2], [0, 0, 2, 2]], [1, 2, 3, 1])
    gale = quad.analyze()
    assert gale.degree == 4 and (gale.r, gale.s) == (2, 2)
    assert gale.count_compact_i().rounded == quad.bf_compact_i()
    assert gale.count_compact_ii().rounded == quad.bf_compact_ii()
    assert quad.analyze(flip_gamma=True).count_compact_ii().rounded == quad.bf_compact_ii()
    assert json.loads(gale.fan_report())["staircase_simplicial"]
    assert hgm_py.Hypersurface.from_json(quad.to_json()).to_json() == quad.to_json()

    cover = hgm_py.cyclic_cover_count(twisted, f13, 1)
    assert cover.rounded == 2 * 13 - 1

    try:
        hgm_py.GammaTriple([1, 1])
    except hgm_py.HgmError:
        pass
    else:
        raise AssertionError("invalid triple accepted")

    results = hgm_py.selftest(5)
    assert results[0][2], results
    print("hgm_py smoke test passed")


if __name__ == "__main__":
    main()
