from __future__ import annotations

from math import comb

import numpy as np
import pytest

from ctop.fpcat import enumerate_hom
from ctop.grid import (
    HAVE_NUMBA,
    GridError,
    GridRegion,
    LatticePath,
    backend,
    builtin_grid,
    cell_commutes,
    class_matrix,
    dihomotopy_classes,
    enumerate_paths,
    max_grid,
    model_vertices,
    replay_merge,
    to_presentation,
)
from ctop.grid import _kernels

from oracles import grid_class_sizes, lattice_paths

# class sizes in order of least member; derived with oracles.grid_class_sizes and frozen
FROZEN_SIZES = {
    "annulus": [10, 10],
    "Y": [26, 200, 26],
    "Z": [84, 42, 42, 84],
}


# -- regions and paths ----------------------------------------------------------------------


def test_region_validation():
    with pytest.raises(GridError, match="outside"):
        GridRegion.build(3, 3, [(4, 1)])
    with pytest.raises(GridError):
        GridRegion.build(-1, 2)
    r = GridRegion.build(2, 2)
    assert r.flexible == {(0, 0), (2, 2)}


def test_region_from_dict_names_field():
    with pytest.raises(GridError, match="width"):
        GridRegion.from_dict({"height": 2})
    with pytest.raises(GridError, match=r"forbidden\[0\]"):
        GridRegion.from_dict({"width": 2, "height": 2, "forbidden": [[1]]})
    r = builtin_grid("Y")
    assert GridRegion.from_dict(r.to_dict()) == r


def test_grid_cap(monkeypatch):
    monkeypatch.delenv("CTOP_MAX_GRID", raising=False)
    assert max_grid() == 26
    with pytest.raises(GridError, match="CTOP_MAX_GRID"):
        GridRegion.build(14, 13)
    monkeypatch.setenv("CTOP_MAX_GRID", "30")
    assert GridRegion.build(14, 13).width == 14
    monkeypatch.setenv("CTOP_MAX_GRID", "4")
    with pytest.raises(GridError):
        GridRegion.build(3, 2)


def test_lattice_path_code_round_trip():
    p = LatticePath((1, 2), "RUURR")
    assert p.end == (4, 4)
    assert LatticePath.from_code((1, 2), p.code(), 5) == p
    assert p.vertices()[:3] == [(1, 2), (2, 2), (2, 3)]
    with pytest.raises(GridError):
        LatticePath((0, 0), "RX")


def test_enumerate_paths_examples():
    r = GridRegion.build(3, 3)
    paths = enumerate_paths(r)
    assert len(paths) == 20 == comb(6, 3)
    assert [p.steps for p in paths] == lattice_paths(3, 3)
    assert len(enumerate_paths(GridRegion.build(1, 1))) == 2
    (empty,) = enumerate_paths(r, (1, 1), (1, 1))
    assert empty.steps == ""


def test_enumerate_paths_rejects_backwards_span():
    with pytest.raises(GridError):
        enumerate_paths(GridRegion.build(3, 3), (2, 2), (1, 3))


# -- classes --------------------------------------------------------------------------------


@pytest.mark.parametrize("name,count", [("annulus", 2), ("Y", 3), ("Z", 4)])
def test_builtin_class_counts(name, count):
    part = dihomotopy_classes(builtin_grid(name))
    assert len(part) == count


@pytest.mark.parametrize("name", sorted(FROZEN_SIZES))
def test_builtin_class_sizes_match_oracle(name):
    r = builtin_grid(name)
    sizes = [c.size for c in dihomotopy_classes(r).classes]
    assert sizes == FROZEN_SIZES[name] == grid_class_sizes(set(r.forbidden), r.start, r.end)


def test_annulus_classes_pass_below_and_above():
    part = dihomotopy_classes(builtin_grid("annulus"))
    assert [c.representative.steps for c in part.classes] == ["RRRUUU", "RUURRU"]


def test_representative_is_lexicographically_least():
    part = dihomotopy_classes(builtin_grid("Z"))
    for k, c in enumerate(part.classes):
        assert c.representative == min(part.members(k), key=lambda p: p.steps)
        assert len(part.members(k)) == c.size


def test_class_index_locates_paths():
    part = dihomotopy_classes(builtin_grid("annulus"))
    assert part.class_index(LatticePath((0, 0), "UUURRR")) == 1
    assert part.class_index(LatticePath((0, 0), "RRRUUU")) == 0
    with pytest.raises(GridError):
        part.class_index(LatticePath((0, 0), "RU"))


def test_merges_replay_as_single_square_moves():
    for name in ("annulus", "Y", "Z"):
        r = builtin_grid(name)
        part = dihomotopy_classes(r)
        assert len(part.merges) == part.total - len(part)
        for a, b in part.merges.tolist():
            assert replay_merge(r, part, a, b)


def test_replay_rejects_non_moves():
    r = builtin_grid("annulus")
    part = dihomotopy_classes(r)
    codes = part.codes.tolist()
    i = codes.index(LatticePath((0, 0), "RRRUUU").code())
    j = codes.index(LatticePath((0, 0), "UUURRR").code())
    assert not replay_merge(r, part, i, j)
    # RU -> UR across the forbidden cell (2, 2)
    i = codes.index(LatticePath((0, 0), "RURUUR").code())
    j = codes.index(LatticePath((0, 0), "RUURUR").code())
    assert not replay_merge(r, part, i, j)


def test_subregion_classes():
    r = builtin_grid("Y")
    part = dihomotopy_classes(r, (1, 1), (4, 4))
    assert [c.size for c in part.classes] == grid_class_sizes(set(r.forbidden), (1, 1), (4, 4))


def test_transpose_preserves_sizes():
    for name in ("annulus", "Y", "Z"):
        r = builtin_grid(name)
        a = sorted(c.size for c in dihomotopy_classes(r).classes)
        b = sorted(c.size for c in dihomotopy_classes(r.transpose()).classes)
        assert a == b


# -- backends -------------------------------------------------------------------------------


def _same_partition(l1: np.ndarray, l2: np.ndarray) -> bool:
    pairs = set(zip(l1.tolist(), l2.tolist()))
    return len(pairs) == len(set(l1.tolist())) == len(set(l2.tolist()))


@pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")
@pytest.mark.parametrize("seed", range(10))
def test_backends_agree(seed):
    rng = np.random.default_rng(seed)
    w, h = int(rng.integers(1, 8)), int(rng.integers(1, 8))
    forbidden = {(i, j) for i in range(1, w + 1) for j in range(1, h + 1) if rng.random() < 0.3}
    r = GridRegion.build(w, h, forbidden)
    a = dihomotopy_classes(r, backend="numpy")
    b = dihomotopy_classes(r, backend="numba")
    assert np.array_equal(a.codes, b.codes)
    assert _same_partition(a.labels, b.labels)
    assert a.classes == b.classes
    assert len(a.merges) == len(b.merges)


def test_backend_env_flag(monkeypatch):
    monkeypatch.setenv("CTOP_NUMBA", "0")
    assert backend() == "numpy"
    monkeypatch.delenv("CTOP_NUMBA")
    assert backend() == ("numba" if HAVE_NUMBA else "numpy")


def test_numpy_enumeration_matches_binomial():
    for dx, dy in [(0, 0), (0, 3), (4, 0), (3, 5)]:
        codes = _kernels.enumerate_codes_numpy(dx, dy)
        assert len(codes) == comb(dx + dy, dx)
        assert np.all(np.diff(codes) > 0)


# -- per-vertex diagnostics -----------------------------------------------------------------


def test_no_holes_has_no_branching():
    m = class_matrix(GridRegion.build(3, 2))
    assert set(m.into.values()) == set(m.out_of.values()) == {1}
    assert m.branch_vertices == ()


def test_annulus_branches_at_hole_corners():
    m = class_matrix(builtin_grid("annulus"))
    assert m.splits == ((1, 1),) and m.merges == ((2, 2),)
    assert m.into[3, 3] == 2 and m.out_of[0, 0] == 2


def test_z_has_two_independent_binary_splits():
    m = class_matrix(builtin_grid("Z"))
    assert m.splits == ((1, 1), (3, 3))
    assert m.merges == ((2, 2), (4, 4))
    assert m.into[5, 5] == 4
    assert m.into[2, 2] == 2 and m.out_of[3, 3] == 2


def test_model_object_counts_observed():
    # corners plus branch vertices; observed to give 4, 8 and 6 objects
    counts = {n: len(class_matrix(builtin_grid(n)).model_objects()) for n in ("annulus", "Y", "Z")}
    assert counts == {"annulus": 4, "Y": 8, "Z": 6}


# -- commuting cells ------------------------------------------------------------------------


def test_annulus_cell_does_not_commute():
    r = builtin_grid("annulus")
    assert not cell_commutes(r, (LatticePath((1, 1), "R"), LatticePath((2, 1), "U")), (LatticePath((1, 1), "U"), LatticePath((1, 2), "R")))


def test_y_central_cell_commutes():
    r = builtin_grid("Y")
    first = (LatticePath((1, 1), "UU"), LatticePath((1, 3), "RURR"))
    second = (LatticePath((1, 1), "RR"), LatticePath((3, 1), "URUU"))
    assert cell_commutes(r, first, second)


def test_degenerate_diamond_commutes():
    r = builtin_grid("Z")
    side = (LatticePath((0, 0), "RU"), LatticePath((1, 1), "UR"))
    assert cell_commutes(r, side, side)


def test_diamond_endpoint_mismatch():
    r = builtin_grid("Z")
    with pytest.raises(GridError, match="endpoints"):
        cell_commutes(r, (LatticePath((0, 0), "R"), LatticePath((1, 0), "U")), (LatticePath((0, 0), "U"), LatticePath((0, 1), "U")))


# -- presentations --------------------------------------------------------------------------


def test_annulus_square_presentation():
    r = builtin_grid("annulus").with_flexible([(2, 1), (1, 2)])
    p = to_presentation(r)
    assert len(p.objects) == 4 and len(p.arrows) == 4 and not p.relations
    assert len(enumerate_hom(p, "(0,0)", "(3,3)", 6)) == 2


def test_no_holes_presentation_is_one_arrow():
    p = to_presentation(GridRegion.build(3, 3))
    assert len(p.arrows) == 1
    assert len(enumerate_hom(p, "(0,0)", "(3,3)", 6)) == 1


def test_z_presentation_has_four_arrows_between_corners():
    p = to_presentation(builtin_grid("Z"))
    assert len(enumerate_hom(p, "(0,0)", "(5,5)", 4)) == 4


@pytest.mark.parametrize("name,objects", [("annulus", 4), ("Y", 8), ("Z", 6)])
def test_d_truncated_presentation(name, objects):
    r = builtin_grid(name)
    p = to_presentation(r, "d-truncated")
    assert len(p.objects) == objects == len(model_vertices(r, "d-truncated"))
    h = enumerate_hom(p, "(0,0)", f"({r.width},{r.height})", r.width + r.height)
    assert len(h) == len(dihomotopy_classes(r))


def test_unknown_semantics():
    with pytest.raises(GridError, match="semantics"):
        model_vertices(builtin_grid("Y"), "x")  # type: ignore[arg-type]
