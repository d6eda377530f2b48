"""Seeded property suites for the two structural lemmas.

Suite 1 (plane germs): whenever the separatrix set consists of exactly
two transversal smooth branches and the reduction shows no divisor
tangency, the origin is already a simple point.

Suite 2 (three-space models): at generic points of the singular axes of
well-oriented simple-model instances, the transversal plane type is
never a saddle-node whose weak separatrix lies inside the divisor trace.
"""

import random
from fractions import Fraction

from foliation_lab import (DicriticalInputError, FieldDescriptor,
                           FieldExtensionError, LocalDivisor,
                           seidenberg_reduce, separatrices2)
from foliation_lab.forms import DivisorBranch, OneForm2, OneForm3
from foliation_lab.poly import MPoly
from foliation_lab.reduce2d import (SADDLE_NODE, ReductionError,
                                    classify_point2)
from foliation_lab.threefold import _axis_trace_form, _singular_axes

from conftest import Q, Q2, UV, XYZ

N_INSTANCES = 200


def _mk2(coeffs):
    return MPoly(UV, {e: Q.rational(Fraction(c)) for e, c in coeffs.items()
                      if c}, Q)


def _two_transversal_smooth_branches(seps, desc):
    if seps.s0() != 2:
        return False
    dirs = []
    for b in seps.branches:
        low = b.implicit.lowest_part()
        if low.degree() != 1:
            return False
        dirs.append((low.coeffs.get((1, 0), desc.zero()),
                     low.coeffs.get((0, 1), desc.zero())))
    (a1, c1), (a2, c2) = dirs
    return not (a1 * c2 - a2 * c1).is_zero()


def _random_plane_germ(rng):
    l1 = rng.choice([x for x in range(-4, 5) if x])
    l2 = rng.choice([x for x in range(-4, 5) if x])
    A = {(0, 1): l1}
    B = {(1, 0): l2}
    for target in (A, B):
        for _ in range(rng.randint(0, 2)):
            e = (rng.randint(0, 3), rng.randint(0, 3))
            if sum(e) >= 2:
                target[e] = target.get(e, 0) + rng.randint(-2, 2)
    return OneForm2(_mk2(A), _mk2(B), UV)


def test_two_branch_second_type_germs_are_already_simple():
    rng = random.Random(20260823)
    satisfied = 0
    for i in range(N_INSTANCES):
        form = _random_plane_germ(rng)
        try:
            tree = seidenberg_reduce(form)
            if tree.has_dicritical():
                continue
            seps = separatrices2(form, tree)
        except (FieldExtensionError, DicriticalInputError, ReductionError):
            continue
        if not _two_transversal_smooth_branches(seps, seps.g.desc):
            continue
        if tree.tangent_witnesses():
            continue
        satisfied += 1
        code, well, _ = classify_point2(form, LocalDivisor.empty())
        assert code.is_simple(), (
            "instance %d: %s has two transversal smooth separatrices and a "
            "tangency-free reduction but classifies as %s"
            % (i, form.render(), code))
    assert satisfied >= 60  # the suite must exercise the hypothesis


# --- three-space suite ------------------------------------------------------

_R2 = Q2.sqrt_gen()
_ONE = Q2.one()

# weak separatrix planes of each model family, by construction
_WEAK_PLANES = {"A": set(), "B1": {"y", "z"}, "B2": {"z"}, "B3": set()}


def _mono3(e, c):
    return MPoly(XYZ, {e: c}, Q2)


def _irrational(rng):
    b = 0
    while b == 0:
        b = rng.randint(-3, 3)
    return Q2.rational(rng.randint(-3, 3)) + Q2.rational(b) * _R2


def _model_instance(rng):
    """One simple-model germ with random admissible parameters.

    Written multiplied through by xyz so the coefficients stay polynomial:
    A:  l1 dx/x + l2 dy/y + l3 dz/z with non-resonant residues;
    B1: dx/x + x^p (l2 dy/y + l3 dz/z);
    B2: p dx/x + q dy/y + mu x^p y^q dz/z (integrable since residues
        match the monomial exponents);
    B3: p1 dx/x + p2 dy/y + p3 dz/z + w (l2 dy/y + l3 dz/z) for the
        resonant monomial w = x^p1 y^p2 z^p3.
    """
    kind = rng.choice(["A", "B1", "B2", "B3"])
    if kind == "A":
        A = _mono3((0, 1, 1), _ONE)
        B = _mono3((1, 0, 1), _irrational(rng))
        C = _mono3((1, 1, 0), _irrational(rng))
    elif kind == "B1":
        p = rng.randint(1, 2)
        A = _mono3((0, 1, 1), _ONE)
        B = _mono3((p + 1, 0, 1), _irrational(rng))
        C = _mono3((p + 1, 1, 0), _ONE)
    elif kind == "B2":
        p, q = rng.randint(1, 2), rng.randint(1, 2)
        A = _mono3((0, 1, 1), Q2.rational(p))
        B = _mono3((1, 0, 1), Q2.rational(q))
        C = _mono3((p + 1, q + 1, 0), _irrational(rng))
    else:
        p1, p2, p3 = (rng.randint(1, 2) for _ in range(3))
        A = _mono3((0, 1, 1), Q2.rational(p1))
        B = _mono3((1, 0, 1), Q2.rational(p2)) \
            + _mono3((p1 + 1, p2, p3 + 1), _ONE)
        C = _mono3((1, 1, 0), Q2.rational(p3)) \
            + _mono3((p1 + 1, p2 + 1, p3), _irrational(rng))
    return kind, OneForm3(A, B, C, XYZ)


def _transversal_type_checks(kind, form, divisor_vars):
    """Classify the transversal plane type at a generic point of each
    singular axis against the divisor trace; yield (axis, code, well)."""
    for kept in _singular_axes(form):
        G, desc_s = _axis_trace_form(form, kept)
        others = tuple(w for w in XYZ if w != kept)
        E = LocalDivisor([DivisorBranch(MPoly.variable(others, w, desc_s))
                          for w in others if w in divisor_vars])
        code, well, _ = classify_point2(G, E)
        yield kept, code, well


def test_well_oriented_models_never_give_tangent_saddle_nodes():
    rng = random.Random(20260823)
    exercised = 0
    saddle_nodes = 0
    for i in range(N_INSTANCES):
        kind, form = _model_instance(rng)
        dvars = {w for w in XYZ if w not in _WEAK_PLANES[kind]}
        found_simple = False
        for kept, code, well in _transversal_type_checks(kind, form, dvars):
            if not code.is_simple():
                continue
            found_simple = True
            if code.kind == SADDLE_NODE:
                saddle_nodes += 1
                assert well, (
                    "instance %d (%s): transversal type along the %s-axis "
                    "is a saddle-node tangent to the divisor trace: %s"
                    % (i, kind, kept, form.render()))
        if found_simple:
            exercised += 1
    assert exercised == N_INSTANCES
    assert saddle_nodes >= 100  # the saddle-node branch must be exercised


def test_misplaced_weak_plane_is_detected_as_tangency():
    """Negative control: putting the weak separatrix plane of a
    saddle-node model into the divisor produces a tangency witness."""
    rng = random.Random(5)
    while True:
        kind, form = _model_instance(rng)
        if kind == "B1":
            break
    # the full coordinate divisor wrongly includes the weak planes y, z
    flagged = False
    for kept, code, well in _transversal_type_checks(kind, form,
                                                     {"x", "y", "z"}):
        if code.kind == SADDLE_NODE and not well:
            flagged = True
    assert flagged
