import os
import shutil

import pytest

from arsobstruct.catalogue import ADEType, catalogue_dir, get_entry, shipped_types
from arsobstruct.errors import OutOfCatalogue, ReductionMismatch, UnknownComponent
from arsobstruct.fields import PrimeField
from arsobstruct.mesh import double_quiver, drop_components, mesh_presentation, reduce_ade
from arsobstruct.path_algebra import format_presentation, instantiate, parse_presentation
from arsobstruct.quiver import remove_tau_orbits, translation_quiver

from oracles import graded_quotient_dims, ideal_ranks

SMALL_MESH = {"A1": 2, "A2": 2, "A3": 10, "A4": 10, "A5": 28, "D4": 56, "D5": 84}


def oracle_input(p):
    verts = list(p.quiver.vertices)
    arrows = [(a.id, a.source, a.target) for a in p.quiver.arrows]
    rels = [{path: c for c, path in r} for r in p.relations]
    return verts, arrows, rels


def test_two_vertex_mesh_presentation():
    tq = translation_quiver(["x", "y"], [("a", "x", "y"), ("b", "y", "x")])
    p = mesh_presentation(tq)
    assert format_presentation(p).splitlines()[-2:] == ["relation b.1*a.1", "relation a.1*b.1"]
    assert instantiate(p).dim == 4


def test_valuation_expands_arrows():
    tq = translation_quiver(["x", "y"], [("a", "x", "y"), ("b", "y", "x")], valuation={"a": 2, "b": 2})
    dq = double_quiver(tq)
    assert [a.id for a in dq.quiver.arrows] == ["a.1", "a.2", "b.1", "b.2"]
    assert dq.sigma["a.2"] == "b.2"


@pytest.mark.parametrize("name, dim", SMALL_MESH.items())
def test_small_mesh_dimensions_against_oracle(name, dim):
    p = mesh_presentation(get_entry(name).ar_quiver)
    a = instantiate(p)
    assert a.dim == dim
    assert sum(graded_quotient_dims(*oracle_input(p))) == dim


@pytest.mark.parametrize("name", ["A3", "A4", "D4", "D5"])
def test_total_sum_generates_same_ideal(name):
    p = mesh_presentation(get_entry(name).ar_quiver)
    verts, arrows, rels = oracle_input(p)
    total = {}
    for r in rels:
        for path, c in r.items():
            total[path] = total.get(path, 0) + c
    n = instantiate(p).nilpotency
    per_vertex = ideal_ranks(verts, arrows, rels, n)
    single = ideal_ranks(verts, arrows, [total], n)
    both = ideal_ranks(verts, arrows, rels + [total], n)
    assert per_vertex == single == both


def test_mesh_presentation_parses_back():
    p = mesh_presentation(get_entry("E6").ar_quiver)
    assert parse_presentation(format_presentation(p)) == p


def _mesh_cap(tq):
    return 2 * len(tq.vertices) + 2


@pytest.mark.parametrize("name", ["A7", "D6", "D7", "E6", "E7", "E8"])
def test_mesh_admissible_over_rationals(name):
    tq = get_entry(name).ar_quiver
    assert instantiate(mesh_presentation(tq), _mesh_cap(tq)).dim > 0


@pytest.mark.slow
def test_mesh_admissible_catalogue_sweep():
    """Release gate: every entry up to index 24 over F_10007 (the rest behind an env var)."""
    full = os.environ.get("ARSOBSTRUCT_FULL_SWEEP") == "1"
    F = PrimeField(10007)
    for t in shipped_types():
        if not full and t.n > 24:
            continue
        tq = get_entry(t).ar_quiver
        a = instantiate(mesh_presentation(tq, F), _mesh_cap(tq))
        assert a.dim > 0


def test_reductions():
    target, steps = reduce_ade("D5")
    assert target == ADEType("A", 3)
    assert [s.to_json() for s in steps] == [{"from": "D_5", "removed_orbits": [["0", "1"], ["2", "3"]], "to": "A_3"}]
    target, steps = reduce_ade("E6")
    assert target == ADEType("A", 3) and steps[0].orbits == (("1", "2"), ("6",))
    target, steps = reduce_ade("E8")
    assert target == ADEType("D", 4)
    assert [s.orbits for s in steps] == [(("1", "2"),), (("3", "4"), ("5", "6"), ("13", "14"))]
    for m in (2, 3, 4):
        assert reduce_ade(ADEType("D", 2 * m + 1))[0] == ADEType("A", 3)


def test_reduction_log_replays():
    for name in ("D7", "E6", "E7", "E8"):
        _, steps = reduce_ade(name)
        current = get_entry(name).ar_quiver
        for s in steps:
            current = remove_tau_orbits(current, s.orbits)
            assert current == s.result


def test_reduction_errors(tmp_path):
    with pytest.raises(OutOfCatalogue):
        reduce_ade("A3")
    src = catalogue_dir()
    for suffix in (".tq", ".json"):
        shutil.copy(src / f"D5{suffix}", tmp_path / f"D5{suffix}")
        shutil.copy(src / f"A5{suffix}", tmp_path / f"A3{suffix}")
    with pytest.raises(ReductionMismatch):
        reduce_ade("D5", tmp_path)


def test_drop_components():
    tq = translation_quiver(["x", "y", "u", "v"], [("a", "x", "y"), ("b", "y", "x"), ("c", "u", "v"), ("d", "v", "u")])
    assert drop_components(tq, [0, 1]) == tq
    first = drop_components(tq, [0])
    assert first.vertices == ("x", "y")
    assert drop_components(tq, ["v"]).vertices == ("u", "v")
    with pytest.raises(UnknownComponent):
        drop_components(tq, [5])
    with pytest.raises(UnknownComponent):
        drop_components(tq, ["zz"])
