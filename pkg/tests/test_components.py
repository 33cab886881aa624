import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from surfchart.chart import validate
from surfchart.components import (
    AbstractComponent,
    Flags,
    canonical_code,
    enumerate_components,
    orientations,
    orientations_raw,
    stub_chart,
    verify_classification,
)
from surfchart.references import FIVE, component_of, golden, reference_codes

RAW = Flags(no_loop=True, orient=False, minimal_local_rules=False)

# frozen from an enumeration run, cross-checked against the reference files
COUNTS = {(2, True): 2, (3, True): 1, (4, True): 6, (5, True): 9,
          (2, False): 2, (3, False): 2, (4, False): 6, (5, False): 10}
ORIENTATION_CLASSES = dict(zip(FIVE, (1, 1, 1, 3, 5, 3, 1, 1, 4)))


@pytest.mark.parametrize("whites, rules", sorted(COUNTS))
def test_counts(whites, rules):
    assert len(enumerate_components(whites, Flags() if rules else RAW)) == COUNTS[whites, rules]


def test_rules_only_filter():
    for w in (2, 3, 4, 5):
        assert set(enumerate_components(w)) <= set(enumerate_components(w, RAW))


def test_too_many_whites():
    with pytest.raises(ValueError):
        enumerate_components(8)


@pytest.mark.parametrize("w", [2, 3, 4, 5])
def test_enumerated_components_are_plane_and_valid(w):
    for comp in enumerate_components(w, RAW).values():
        g = nx.MultiGraph()
        g.add_nodes_from(range(len(comp.rotation)))
        g.add_edges_from((comp.vertex_of[a], comp.vertex_of[b]) for a, b in comp.edges())
        assert nx.is_connected(g) and nx.check_planarity(g)[0]
        degrees = dict(g.degree())
        assert all(degrees[v] == 3 for v in range(comp.whites))
        assert all(degrees[v] == 1 for v in range(comp.whites, len(comp.rotation)))
        assert len(comp.rotation) - comp.edge_count + comp.face_count() == 2


@pytest.mark.parametrize("w", [2, 3, 5])
def test_oriented_representatives_give_valid_charts(w):
    for comp in enumerate_components(w).values():
        assert comp.local_violations() == []
        assert validate(stub_chart(comp)) == []


@pytest.mark.parametrize("name", FIVE)
def test_orientation_classes(name):
    base = component_of(golden(name)).with_direction(None)
    classes = orientations(base)
    assert len(classes) == ORIENTATION_CLASSES[name]
    assert canonical_code(component_of(golden(name))) in classes
    raw = orientations_raw(base)
    assert {canonical_code(o) for o in raw} == set(classes)


def permuted(comp: AbstractComponent, vperm, dperm, shift):
    """The same embedded component under renamed vertices and darts."""
    n = len(comp.twin)
    rotation = [None] * len(comp.rotation)
    for v, rot in enumerate(comp.rotation):
        k = shift % len(rot)
        rotation[vperm[v]] = tuple(dperm[d] for d in rot[k:] + rot[:k])
    twin = [0] * n
    for d in range(n):
        twin[dperm[d]] = dperm[comp.twin[d]]
    direction = None
    if comp.direction is not None:
        direction = [None] * n
        for d in range(n):
            direction[dperm[d]] = comp.direction[d]
        direction = tuple(direction)
    return AbstractComponent(comp.whites, tuple(rotation), tuple(twin), direction)


@st.composite
def relabelings(draw):
    name = draw(st.sampled_from(sorted(reference_codes())))
    comp = next(component_of(golden(n)) for n in ("fig5a", "fig5b", "fig5c") + FIVE
                if golden(n).meta["class"] == name)
    whites = draw(st.permutations(range(comp.whites)))
    blacks = draw(st.permutations(range(comp.whites, len(comp.rotation))))
    darts = draw(st.permutations(range(len(comp.twin))))
    shift = draw(st.integers(0, 5))
    return comp, permuted(comp, list(whites) + list(blacks), darts, shift)


@settings(max_examples=80, deadline=None)
@given(relabelings())
def test_code_ignores_names(pair):
    comp, other = pair
    assert canonical_code(other) == canonical_code(comp)
    assert canonical_code(other, oriented=False) == canonical_code(comp, oriented=False)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(FIVE), st.booleans(), st.booleans())
def test_code_is_ro_invariant(name, reflect, reverse):
    comp = component_of(golden(name))
    moved = comp.reflected() if reflect else comp
    moved = moved.reversed() if reverse else moved
    assert canonical_code(moved) == canonical_code(comp)
    # directions never enter the unoriented code
    assert canonical_code(comp.reversed(), oriented=False, ro=False) == canonical_code(comp, oriented=False, ro=False)


@pytest.mark.parametrize("lemma, size", [("5.1b", 3), ("lemma-7.1", 9), ("7.2", 7)])
def test_classification_reports(lemma, size):
    rep = verify_classification(lemma)
    assert rep.match and not rep.extras and not rep.missing
    assert len(rep.found) == size


def test_classification_black_counts():
    assert verify_classification("7.1").notes == ("black vertices (3, 3, 3, 1, 1, 1, 3, 3, 1)",)


def test_unknown_lemma():
    with pytest.raises(ValueError):
        verify_classification("9.9")
