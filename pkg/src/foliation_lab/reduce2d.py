"""Seidenberg reduction of plane foliation singularities.

The engine repeatedly blows up every point over the origin that is
neither divisor-regular nor divisor-simple, classifies the final points
against the simple models (non-degenerate linear, saddle-node), and
records the divisor combinatorics: components with self-intersections,
adjacencies, and the decorated final singularities.

Points to visit on each exceptional line are located exactly by root
isolation over the coefficient field tower; a root that requires a new
square root triggers a widening restart, a root of an irreducible cubic
or worse aborts with a field-extension error.
"""

from __future__ import annotations

from .fields import (
    FieldDescriptor,
    FieldElement,
    FieldExtensionError,
    WidenRequest,
    ratio_in_positive_rationals,
    sort_key,
    sqrt_or_widen,
)
from .forms import (
    DivisorBranch,
    LocalDivisor,
    OneForm2,
    invariant_graph_jet,
    normalize2,
)
from .blowup import blowup_point2
from .poly import MPoly, divides, to_univariate, u_roots_in_tower

REGULAR = "Regular"
SIMPLE = "SimpleNonDegenerate"
SADDLE_NODE = "SaddleNode"
NON_SIMPLE = "NonSimple"

E_REGULAR = "E-regular"
E_SIMPLE = "E-simple"
UNADAPTED = "unadapted"


class ReductionError(Exception):
    """Engine failure: depth exhausted or degenerate input."""

    def __init__(self, message, tree=None):
        super().__init__(message)
        self.tree = tree


class ClassCode:
    """Local classification of a point against the simple models."""

    __slots__ = ("kind", "strong", "weak", "adapted")

    def __init__(self, kind, strong=None, weak=None, adapted=UNADAPTED):
        self.kind = kind
        self.strong = strong
        self.weak = weak
        self.adapted = adapted

    def is_simple(self):
        return self.kind in (SIMPLE, SADDLE_NODE)

    def __repr__(self):
        return "ClassCode(%s, %s)" % (self.kind, self.adapted)


class SingularityRecord:
    """One final point of the reduction with its local data."""

    __slots__ = ("path", "form", "divisor", "code", "well_oriented", "linear",
                 "components")

    def __init__(self, path, form, divisor, code, well_oriented, linear,
                 components=()):
        self.path = path
        self.form = form
        self.divisor = divisor
        self.code = code
        self.well_oriented = well_oriented
        self.linear = linear
        self.components = tuple(components)

    def __repr__(self):
        return "SingularityRecord(%r, %s, well_oriented=%s)" % (
            list(self.path), self.code, self.well_oriented,
        )


class ReductionTree:
    """Full record of one reduction run."""

    __slots__ = ("form", "desc", "components", "edges", "events", "leaves",
                 "blowup_count")

    def __init__(self, form, desc):
        self.form = form
        self.desc = desc
        self.components = {}
        self.edges = set()
        self.events = []
        self.leaves = []
        self.blowup_count = 0

    def singular_leaves(self):
        return [r for r in self.leaves if r.code.kind != REGULAR]

    def saddle_nodes(self):
        return [r for r in self.leaves if r.code.kind == SADDLE_NODE]

    def tangent_witnesses(self):
        return [r for r in self.leaves if not r.well_oriented]

    def has_dicritical(self):
        return any(c["dicritical"] for c in self.components.values())

    def dicritical_components(self):
        return sorted(k for k, c in self.components.items() if c["dicritical"])


def _is_zero_dir(d):
    return d[0].is_zero() and d[1].is_zero()

def _parallel(d1, d2) -> bool:
    return (d1[0] * d2[1] - d1[1] * d2[0]).is_zero()


def _branch_tangent(eq: MPoly, desc):
    """Tangent direction of a smooth branch at the origin."""
    u, v = eq.vars
    zero = {u: desc.zero(), v: desc.zero()}
    fu = eq.partial(u).evaluate(zero)
    fv = eq.partial(v).evaluate(zero)
    if fu.is_zero() and fv.is_zero():
        raise ValueError("divisor branch is singular at the origin")
    return (fv, -fu)


def _branch_invariant(form: OneForm2, eq: MPoly) -> bool:
    """Whether {eq = 0} is invariant: the dual field preserves the ideal."""
    u, v = form.vars
    xf = form.B * eq.partial(u) - form.A * eq.partial(v)
    if xf.is_zero():
        return True
    return divides(xf, eq)


def _eigdir(M, lam, desc):
    """A kernel direction of M - lam*I."""
    a = M[0][0] - lam
    b = M[0][1]
    c = M[1][0]
    d = M[1][1] - lam
    for row in ((a, b), (c, d)):
        if not (row[0].is_zero() and row[1].is_zero()):
            return (-row[1], row[0])
    return (desc.one(), desc.zero())


def classify_linear2(M, desc: FieldDescriptor) -> str:
    """Preliminary code from the linear part of the dual vector field."""
    tr = M[0][0] + M[1][1]
    det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    verdict = ratio_in_positive_rationals(tr, det)
    if verdict in ("nilpotent", "yes"):
        return NON_SIMPLE
    if verdict == "zero-eigenvalue":
        return "SaddleNodeCandidate"
    return SIMPLE


def _rotate_form(form: OneForm2, d1, d2) -> OneForm2:
    """Pull back by the linear map sending (1,0), (0,1) to d1, d2."""
    u, v = form.vars
    desc = form.desc
    prec = form.prec()
    uu = MPoly.variable(form.vars, u, desc, prec)
    vv = MPoly.variable(form.vars, v, desc, prec)
    img_u = uu.scale(d1[0]) + vv.scale(d2[0])
    img_v = uu.scale(d1[1]) + vv.scale(d2[1])
    mapping = {u: img_u, v: img_v}
    A = form.A.substitute(mapping)
    B = form.B.substitute(mapping)
    # d(img_u) = d1[0] du + d2[0] dv etc.
    nA = A.scale(d1[0]) + B.scale(d1[1])
    nB = A.scale(d2[0]) + B.scale(d2[1])
    return OneForm2(nA, nB, form.vars)


def saddle_node_data(form: OneForm2, jet_order: int):
    """Strong/weak directions of a saddle-node, jet-checked for a weak graph."""
    desc = form.desc
    M = form.dual_linear_part()
    tr = M[0][0] + M[1][1]
    strong = _eigdir(M, tr, desc)
    weak = _eigdir(M, desc.zero(), desc)
    rotated = _rotate_form(form, weak, strong)
    coeffs = invariant_graph_jet(normalize2(rotated), jet_order)
    return strong, weak, coeffs


def classify_point2(form: OneForm2, E: LocalDivisor, jet_order: int = 8):
    """Classify one point against the simple models, relative to the divisor.

    Returns (ClassCode, well_oriented, linear_matrix).  The divisor is
    restricted to its branches through the origin.
    """
    form = normalize2(form)
    desc = form.desc
    zero = {w: desc.zero() for w in form.vars}
    local = [b for b in E if b.equation.evaluate(zero).is_zero()]
    a0 = form.A.evaluate(zero)
    b0 = form.B.evaluate(zero)
    M = form.dual_linear_part()
    if not (a0.is_zero() and b0.is_zero()):
        leaf_dir = (b0, -a0)
        adapted = E_REGULAR
        for b in local:
            tangent = _branch_tangent(b.equation, desc)
            if b.dicritical:
                if _parallel(leaf_dir, tangent):
                    adapted = UNADAPTED  # tangency with a dicritical component
            elif not _branch_invariant(form, b.equation):
                adapted = UNADAPTED
        return ClassCode(REGULAR, adapted=adapted), True, M

    verdict = classify_linear2(M, desc)
    if verdict == NON_SIMPLE:
        return ClassCode(NON_SIMPLE), True, M

    adapted = E_SIMPLE
    if len(local) > 2:
        adapted = UNADAPTED
    for b in local:
        if b.dicritical or not _branch_invariant(form, b.equation):
            adapted = UNADAPTED

    if verdict == SIMPLE:
        code = ClassCode(SIMPLE, adapted=adapted)
        return code, True, M

    strong, weak, _ = saddle_node_data(form, jet_order)
    well = True
    for b in local:
        if b.dicritical:
            continue
        if _parallel(_branch_tangent(b.equation, desc), weak):
            well = False  # the weak separatrix lies in the divisor
    return ClassCode(SADDLE_NODE, strong, weak, adapted), well, M


def _restrict_to_line(p: MPoly, var: str, desc):
    """Coefficient list of p restricted to {var = 0}, in the other variable."""
    other = [w for w in p.vars if w != var][0]
    restr = p.restrict({var: desc.zero()})
    return to_univariate(restr, other)


class _Engine:
    def __init__(self, form, divisor, max_depth, jet_order):
        self.max_depth = max_depth
        self.jet_order = jet_order
        self.desc = form.desc
        self.tree = ReductionTree(form, form.desc)
        self.next_comp = 0
        init = []
        for b in divisor:
            cid = "B%d" % self.next_comp
            self.next_comp += 1
            self.tree.components[cid] = {
                "dicritical": b.dicritical, "self_int": None, "born": (),
            }
            init.append((cid, b))
        self.initial = init

    def new_component(self, dicritical, path):
        cid = "E%d" % self.next_comp
        self.next_comp += 1
        self.tree.components[cid] = {
            "dicritical": dicritical, "self_int": -1, "born": path,
        }
        return cid

    def run(self):
        self.process((), self.tree.form, self.initial, 0)
        return self.tree

    def process(self, path, form, tagged_branches, depth):
        desc = self.desc
        zero = {w: desc.zero() for w in form.vars}
        local = [(cid, b) for cid, b in tagged_branches
                 if b.equation.evaluate(zero).is_zero()]
        E = LocalDivisor([b for _, b in local])
        code, well, M = classify_point2(form, E, self.jet_order)
        if code.adapted != UNADAPTED:
            if code.kind != REGULAR:
                self.tree.leaves.append(SingularityRecord(
                    path, normalize2(form), E, code, well, M,
                    components=[cid for cid, _ in local],
                ))
            return
        if depth >= self.max_depth:
            raise ReductionError("blow-up depth exhausted", self.tree)

        form = normalize2(form)
        charts = blowup_point2(form, E, force=True)
        self.tree.blowup_count += 1
        new_id = self.new_component(charts[0].dicritical, path)
        through = sorted(cid for cid, _ in local)
        self.tree.events.append({
            "path": path, "through": through,
            "dicritical": charts[0].dicritical, "new": new_id,
        })
        for cid, _ in local:
            comp = self.tree.components[cid]
            if comp["self_int"] is not None:
                comp["self_int"] -= 1
            self.tree.edges.add(frozenset((cid, new_id)))
        if len(through) == 2:
            self.tree.edges.discard(frozenset(through))

        for chart in charts:
            self.descend(path, chart, local, new_id, depth)

    def chart_strict_branches(self, chart, local):
        """Pair surviving strict branch equations with their component ids."""
        out = []
        strict_iter = list(chart.divisor)[:-1]  # exceptional appended last
        # _transform_divisor drops branches that leave the chart, so rebuild
        # the pairing by recomputing which survive, in order.
        idx = 0
        from .blowup import _strict_branch
        u, v = chart.form.vars
        desc = chart.form.desc
        prec = chart.form.prec()
        uu = MPoly.variable(chart.form.vars, u, desc, prec)
        vv = MPoly.variable(chart.form.vars, v, desc, prec)
        if chart.label == "c1":
            mapping = {u: uu, v: uu * vv}
            exc_var = u
        else:
            mapping = {u: uu * vv, v: vv}
            exc_var = v
        for cid, b in local:
            strict = _strict_branch(b.equation, mapping, exc_var)
            if strict is not None:
                out.append((cid, DivisorBranch(strict, b.dicritical)))
        return out, exc_var

    def descend(self, path, chart, local, new_id, depth):
        desc = self.desc
        strict_branches, exc_var = self.chart_strict_branches(chart, local)
        u, v = chart.form.vars
        other = v if exc_var == u else u
        if chart.label == "c1":
            key = chart.form.B if chart.dicritical else chart.form.A
        else:
            key = chart.form.A if chart.dicritical else chart.form.B
        coeffs = _restrict_to_line(key, exc_var, desc)
        if not coeffs:
            raise ReductionError(
                "strict transform vanishes along the exceptional line; "
                "input coefficients were not coprime", self.tree)
        if chart.label == "c1":
            roots = u_roots_in_tower(coeffs, desc)
            for b_cid, b in strict_branches:
                val = b.equation.restrict({exc_var: desc.zero()})
                extra = u_roots_in_tower(to_univariate(val, other), desc) \
                    if not val.is_zero() else []
                for r in extra:
                    if all(r != s for s in roots):
                        roots.append(r)
            roots.sort(key=sort_key)
        else:
            # chart c2 only contributes the point at infinity of chart c1
            zero_pt = {u: desc.zero(), v: desc.zero()}
            candidate = key.evaluate(zero_pt).is_zero() or any(
                b.equation.evaluate(zero_pt).is_zero()
                for _, b in strict_branches)
            roots = [desc.zero()] if candidate else []
        exc_branch = (new_id,
                      DivisorBranch(MPoly.variable(chart.form.vars, exc_var,
                                                   desc), chart.dicritical))
        for c in roots:
            child_form = chart.form.translate({other: c})
            child_branches = [exc_branch]
            for cid, b in strict_branches:
                child_branches.append(
                    (cid, DivisorBranch(b.equation.translate({other: c}),
                                        b.dicritical)))
            self.process(path + ((chart.label, c),), child_form,
                         child_branches, depth + 1)


def seidenberg_reduce(form: OneForm2, E: LocalDivisor = None,
                      max_depth: int = 64, jet_order: int = 8) -> ReductionTree:
    """Reduce the singularity at the origin; widen the tower on demand."""
    if E is None:
        E = LocalDivisor.empty()
    form = normalize2(form)
    while True:
        try:
            return _Engine(form, E, max_depth, jet_order).run()
        except WidenRequest as w:
            desc = form.desc.widened(w.m)
            form = OneForm2(form.A.coerce_to(desc), form.B.coerce_to(desc),
                            form.vars)
            E = LocalDivisor([DivisorBranch(b.equation.coerce_to(desc),
                                            b.dicritical) for b in E])


class SecondTypeResult:
    __slots__ = ("value", "witnesses", "tree")

    def __init__(self, value, witnesses, tree):
        self.value = value
        self.witnesses = witnesses
        self.tree = tree

    def __bool__(self):
        return self.value


def is_second_type2(form: OneForm2, E: LocalDivisor = None,
                    max_depth: int = 64, jet_order: int = 8) -> SecondTypeResult:
    """Whether every final singularity is well oriented for the divisor."""
    tree = seidenberg_reduce(form, E, max_depth, jet_order)
    witnesses = tree.tangent_witnesses()
    return SecondTypeResult(not witnesses, witnesses, tree)


def is_generalized_curve2(form: OneForm2, max_depth: int = 64,
                          jet_order: int = 8) -> bool:
    """Whether the reduction is free of saddle-nodes."""
    tree = seidenberg_reduce(form, None, max_depth, jet_order)
    return not tree.saddle_nodes()


def dual_graph(tree: ReductionTree) -> dict:
    """Weighted dual graph of the final divisor, with decorated half-edges."""
    vertices = {}
    for cid, comp in tree.components.items():
        vertices[cid] = {
            "self_intersection": comp["self_int"],
            "dicritical": comp["dicritical"],
        }
    edges = sorted(tuple(sorted(e)) for e in tree.edges)
    half_edges = []
    for rec in tree.leaves:
        for cid in rec.components:
            half_edges.append((cid, rec.code.kind, rec.well_oriented))
    half_edges.sort(key=lambda h: (h[0], h[1]))
    return {"vertices": vertices, "edges": edges, "half_edges": half_edges}


def _canonical(tree: ReductionTree):
    event_by_path = {ev["path"]: ev for ev in tree.events}
    kids = {p: [] for p in event_by_path}
    roots = []
    for p, ev in event_by_path.items():
        parent = p[:-1] if p else None
        if parent in event_by_path:
            kids[parent].append(p)
        else:
            roots.append(p)
    leaf_by_parent = {}
    for rec in tree.leaves:
        parent = rec.path[:-1] if rec.path else None
        key = parent if parent in event_by_path else None
        leaf_by_parent.setdefault(key, []).append(
            (rec.code.kind, len(rec.components), rec.well_oriented))

    def encode(p):
        ev = event_by_path[p]
        sub = tuple(sorted(encode(q) for q in kids[p]))
        leaves = tuple(sorted(leaf_by_parent.get(p, [])))
        return (len(ev["through"]), ev["dicritical"], leaves, sub)

    top = tuple(sorted(encode(p) for p in roots))
    stray = tuple(sorted(leaf_by_parent.get(None, [])))
    return (top, stray)


def trees_equivalent(t1: ReductionTree, t2: ReductionTree) -> bool:
    """Combinatorial equivalence of two reduction histories."""
    return _canonical(t1) == _canonical(t2)
