"""Finite simplicial complexes, exact integral homology, and the
connectivity/lifting harnesses used to exercise the simplicial lemmas.

Two complex flavors share one protocol: flag complexes (simplices = cliques
of a graph, the case arising from orthogonality of block morphisms) and
general complexes given by maximal faces (used for fixtures like spheres
and the 6-vertex projective plane, which are not flag).

"n-connected" here always means the homological proxy: nonempty with
H~_i = 0 for i <= n (degree 0 checked exactly via graph connectivity, so
for n <= 0 the proxy is exact).  Levels n = -1 and n <= -2 mean nonempty
and no condition, matching the usual conventions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import BudgetExhausted, CapExceeded, InputError
from .snf import smith_normal_form

DEFAULT_SIMPLEX_BUDGET = 2_000_000


# ---------------------------------------------------------------------------
# Complexes
# ---------------------------------------------------------------------------


class FlagComplex:
    """Clique complex of a finite graph.

    Vertices are hashable labels; the canonical vertex order is the order
    of ``labels``, and every face is reported as a tuple sorted by that
    order.
    """

    def __init__(self, labels, adjacency):
        self.labels = tuple(labels)
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise InputError("vertex labels must be distinct")
        adj = np.asarray(adjacency, dtype=bool)
        if adj.shape != (n, n):
            raise InputError("adjacency matrix has wrong shape")
        if not np.array_equal(adj, adj.T):
            raise InputError("adjacency matrix must be symmetric")
        if n and adj.diagonal().any():
            raise InputError("no loops allowed")
        self.adj = adj
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    @classmethod
    def from_edges(cls, labels, edges) -> "FlagComplex":
        labels = tuple(labels)
        index = {lab: i for i, lab in enumerate(labels)}
        n = len(labels)
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if u == v:
                raise InputError("no loops allowed")
            adj[index[u], index[v]] = True
            adj[index[v], index[u]] = True
        return cls(labels, adj)

    # -- protocol ----------------------------------------------------------

    @property
    def vertices(self) -> tuple:
        return self.labels

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    def edge_count(self) -> int:
        return int(self.adj.sum()) // 2

    def has_face(self, vs) -> bool:
        idx = [self._index.get(v) for v in set(vs)]
        if any(i is None for i in idx) or not idx:
            return False
        return all(self.adj[a, b] for a, b in itertools.combinations(idx, 2))

    def adjacent(self, u, v) -> bool:
        return bool(self.adj[self._index[u], self._index[v]])

    def neighbors(self, v) -> list:
        i = self._index[v]
        return [self.labels[j] for j in np.nonzero(self.adj[i])[0]]

    def faces_of_dim(self, d: int, budget: int = DEFAULT_SIMPLEX_BUDGET) -> list[tuple]:
        """All d-simplices (cliques on d+1 vertices), lexicographic."""
        if d < 0:
            return [()]
        out: list[tuple] = []
        n = self.n_vertices
        adj = self.adj

        def grow(clique: list[int], candidates: np.ndarray) -> None:
            if len(clique) == d + 1:
                out.append(tuple(self.labels[i] for i in clique))
                if len(out) > budget:
                    raise CapExceeded(
                        f"more than {budget} simplices of dimension {d}",
                        needed=len(out),
                        cap=budget,
                    )
                return
            for i in np.nonzero(candidates)[0]:
                nxt = candidates & adj[i]
                nxt[: i + 1] = False
                grow(clique + [int(i)], nxt)

        grow([], np.ones(n, dtype=bool))
        return out

    def link_of(self, sigma) -> "FlagComplex":
        """Induced flag complex on the common neighbors of sigma.

        For flag complexes this is exactly the simplicial link: zeta is in
        the link iff it is disjoint from sigma and sigma + zeta is a clique.
        """
        sigma = list(sigma)
        if not self.has_face(sigma):
            raise InputError("sigma is not a simplex of the complex")
        mask = np.ones(self.n_vertices, dtype=bool)
        for v in sigma:
            i = self._index[v]
            mask &= self.adj[i]
            mask[i] = False
        keep = np.nonzero(mask)[0]
        return self.induced([self.labels[i] for i in keep])

    def induced(self, vertex_subset) -> "FlagComplex":
        keep = [self._index[v] for v in vertex_subset]
        labels = [self.labels[i] for i in keep]
        adj = self.adj[np.ix_(keep, keep)]
        return FlagComplex(labels, adj)

    def components(self) -> list[set]:
        seen = set()
        out = []
        for start in range(self.n_vertices):
            if start in seen:
                continue
            comp = {start}
            frontier = [start]
            while frontier:
                i = frontier.pop()
                for j in np.nonzero(self.adj[i])[0]:
                    j = int(j)
                    if j not in comp:
                        comp.add(j)
                        frontier.append(j)
            seen |= comp
            out.append({self.labels[i] for i in comp})
        return out

    def is_connected(self) -> bool:
        return self.n_vertices > 0 and len(self.components()) == 1

    def to_dot(self, name: str = "complex") -> str:
        lines = [f"graph {name} {{"]
        for i, lab in enumerate(self.labels):
            lines.append(f'  v{i} [label="{lab}"];')
        for i in range(self.n_vertices):
            for j in range(i + 1, self.n_vertices):
                if self.adj[i, j]:
                    lines.append(f"  v{i} -- v{j};")
        lines.append("}")
        return "\n".join(lines)


class GeneralComplex:
    """Simplicial complex stored as its full (downward closed) face set.

    Intended for small fixtures given by maximal faces; complexes that are
    not flag (boundaries of simplices, the 6-vertex projective plane) must
    come through here.
    """

    def __init__(self, maximal_faces, labels=None):
        faces: set[frozenset] = set()
        for mf in maximal_faces:
            mf = frozenset(mf)
            for r in range(1, len(mf) + 1):
                for sub in itertools.combinations(sorted(mf, key=repr), r):
                    faces.add(frozenset(sub))
        if labels is None:
            labelset = set()
            for f in faces:
                labelset |= f
            try:
                labels = tuple(sorted(labelset))
            except TypeError:
                labels = tuple(sorted(labelset, key=repr))
        self.labels = tuple(labels)
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        for f in faces:
            for v in f:
                if v not in self._index:
                    raise InputError(f"face vertex {v!r} missing from labels")
        self.faces = faces

    @property
    def vertices(self) -> tuple:
        return self.labels

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    def has_face(self, vs) -> bool:
        vs = frozenset(vs)
        return bool(vs) and vs in self.faces

    def adjacent(self, u, v) -> bool:
        return u != v and frozenset((u, v)) in self.faces

    def faces_of_dim(self, d: int, budget: int = DEFAULT_SIMPLEX_BUDGET) -> list[tuple]:
        if d < 0:
            return [()]
        found = [f for f in self.faces if len(f) == d + 1]
        if len(found) > budget:
            raise CapExceeded(
                f"more than {budget} simplices of dimension {d}",
                needed=len(found),
                cap=budget,
            )
        out = [tuple(sorted(f, key=self._index.__getitem__)) for f in found]
        out.sort(key=lambda t: tuple(self._index[v] for v in t))
        return out

    def link_of(self, sigma) -> "GeneralComplex":
        sigma = frozenset(sigma)
        if sigma and sigma not in self.faces:
            raise InputError("sigma is not a simplex of the complex")
        link_faces = [
            f for f in self.faces if not (f & sigma) and (f | sigma) in self.faces
        ] if sigma else list(self.faces)
        keep = sorted(
            {v for f in link_faces for v in f}, key=self._index.__getitem__
        )
        out = GeneralComplex([], labels=tuple(keep))
        out.faces = set(link_faces)
        return out

    def induced(self, vertex_subset) -> "GeneralComplex":
        keep = set(vertex_subset)
        out = GeneralComplex([], labels=tuple(v for v in self.labels if v in keep))
        out.faces = {f for f in self.faces if f <= keep}
        return out

    def components(self) -> list[set]:
        nbrs = {v: set() for v in self.labels}
        for f in self.faces:
            if len(f) == 2:
                a, b = tuple(f)
                nbrs[a].add(b)
                nbrs[b].add(a)
        seen = set()
        out = []
        for v in self.labels:
            if v in seen:
                continue
            comp = {v}
            frontier = [v]
            while frontier:
                u = frontier.pop()
                for w in nbrs[u]:
                    if w not in comp:
                        comp.add(w)
                        frontier.append(w)
            seen |= comp
            out.append(comp)
        return out

    def is_connected(self) -> bool:
        return self.n_vertices > 0 and len(self.components()) == 1

    def to_dot(self, name: str = "complex") -> str:
        lines = [f"graph {name} {{"]
        for i, lab in enumerate(self.labels):
            lines.append(f'  v{i} [label="{lab}"];')
        for f in sorted(self.faces_of_dim(1)):
            lines.append(
                f"  v{self._index[f[0]]} -- v{self._index[f[1]]};"
            )
        lines.append("}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# Homology
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DegreeHomology:
    betti: int
    torsion: tuple[int, ...]

    def is_zero(self) -> bool:
        return self.betti == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.betti == 1:
            parts.append("Z")
        elif self.betti > 1:
            parts.append(f"Z^{self.betti}")
        for t, group in itertools.groupby(self.torsion):
            m = len(list(group))
            parts.append(f"Z/{t}" if m == 1 else f"(Z/{t})^{m}")
        return " + ".join(parts) if parts else "0"


@dataclass
class HomologyResult:
    """Unreduced integral homology per degree.

    ``face_counts`` records how many simplices were found per dimension;
    when ``complete`` is False some requested degrees could not be finished
    inside the budget and are missing from ``degrees``.
    """

    degrees: dict[int, DegreeHomology]
    face_counts: dict[int, int]
    complete: bool
    top_dim: int | None

    def betti(self, d: int) -> int:
        return self.degrees[d].betti

    def euler_from_faces(self) -> int:
        return sum((-1) ** d * c for d, c in self.face_counts.items())

    def euler_from_betti(self) -> int:
        return sum((-1) ** d * h.betti for d, h in self.degrees.items())


def _boundary_matrix(faces_lo: list[tuple], faces_hi: list[tuple]) -> list[list[int]]:
    index = {f: i for i, f in enumerate(faces_lo)}
    mat = [[0] * len(faces_hi) for _ in range(len(faces_lo))]
    for j, f in enumerate(faces_hi):
        for t in range(len(f)):
            face = f[:t] + f[t + 1 :]
            mat[index[face]][j] = (-1) ** t
    return mat


def _homology_single(K, max_dim, budget) -> HomologyResult:
    faces: dict[int, list[tuple]] = {}
    used = 0
    top = None
    d = 0
    stop = max_dim + 1 if max_dim is not None else None
    while True:
        if stop is not None and d > stop:
            break
        try:
            fs = K.faces_of_dim(d, budget=budget - used)
        except CapExceeded:
            return _assemble(faces, complete=False, top=top, max_dim=max_dim)
        if not fs:
            top = d - 1
            break
        faces[d] = fs
        used += len(fs)
        d += 1
    return _assemble(faces, complete=True, top=top, max_dim=max_dim)


def _assemble(faces, complete, top, max_dim) -> HomologyResult:
    dims = sorted(faces)
    ranks: dict[int, int] = {}
    tors: dict[int, tuple[int, ...]] = {}
    for d in dims:
        hi = faces.get(d + 1, [])
        if hi:
            res = smith_normal_form(_boundary_matrix(faces[d], hi))
            ranks[d + 1] = res.rank
            tors[d] = tuple(x for x in res.diag if x > 1)
        else:
            ranks[d + 1] = 0
            tors[d] = ()
    degrees = {}
    limit = max_dim if max_dim is not None else (top if top is not None else -1)
    for d in dims:
        if d > limit:
            continue
        n_d = len(faces[d])
        rank_d = ranks.get(d, 0) if d > 0 else 0
        betti = n_d - rank_d - ranks[d + 1]
        degrees[d] = DegreeHomology(betti=betti, torsion=tors[d])
    for d in range(len(dims), limit + 1):
        degrees[d] = DegreeHomology(betti=0, torsion=())
    counts = {d: len(fs) for d, fs in faces.items()}
    return HomologyResult(
        degrees=degrees, face_counts=counts, complete=complete, top_dim=top
    )


def homology(K, max_dim: int | None = None, budget: int = DEFAULT_SIMPLEX_BUDGET) -> HomologyResult:
    """Unreduced integral homology in degrees <= max_dim (all degrees when
    None), computed componentwise from boundary-matrix Smith normal forms.

    Splitting into connected components first keeps the matrices small;
    homology is additive over disjoint unions.
    """
    comps = K.components()
    if len(comps) <= 1:
        return _homology_single(K, max_dim, budget)
    total_degrees: dict[int, list[int, list]] = {}
    counts: dict[int, int] = {}
    complete = True
    top = None
    for comp in comps:
        res = _homology_single(K.induced(sorted(comp, key=repr)), max_dim, budget)
        complete &= res.complete
        if res.top_dim is not None:
            top = res.top_dim if top is None else max(top, res.top_dim)
        for d, c in res.face_counts.items():
            counts[d] = counts.get(d, 0) + c
        for d, h in res.degrees.items():
            slot = total_degrees.setdefault(d, [0, []])
            slot[0] += h.betti
            slot[1].extend(h.torsion)
    degrees = {
        d: DegreeHomology(betti=b, torsion=tuple(sorted(t)))
        for d, (b, t) in total_degrees.items()
    }
    return HomologyResult(degrees=degrees, face_counts=counts, complete=complete, top_dim=top)


def homological_connectivity(K, n: int, budget: int = DEFAULT_SIMPLEX_BUDGET) -> bool:
    """Homological n-connectivity proxy.

    n <= -2: always true.  n = -1: nonempty.  n = 0: connected (exact).
    n >= 1: additionally H_i = 0 for 1 <= i <= n (Betti and torsion).
    Raises BudgetExhausted when the face enumeration cannot finish.
    """
    if n <= -2:
        return True
    if K.n_vertices == 0:
        return False
    if n == -1:
        return True
    if not K.is_connected():
        return False
    if n == 0:
        return True
    res = homology(K, max_dim=n, budget=budget)
    if not res.complete:
        raise BudgetExhausted(f"homology through degree {n} did not finish")
    return all(res.degrees[d].is_zero() for d in range(1, n + 1) if d in res.degrees)


# ---------------------------------------------------------------------------
# Verdicts and harness operations
# ---------------------------------------------------------------------------

PASS = "PASS"
FAIL = "FAIL"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class Verdict:
    status: str
    detail: str = ""
    witness: object = None
    stats: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.status == PASS


def lcm_check(K, n: int, p_cap: int | None = None, budget: int = DEFAULT_SIMPLEX_BUDGET) -> Verdict:
    """Is the link of every p-simplex (n-p-2)-connected?

    Links of p-simplices with p > n - 1 face a level <= -2 requirement and
    are vacuously fine, so p ranges over 0..min(p_cap, n-1); a p_cap below
    n-1 leaves the check partial and the verdict INCONCLUSIVE.
    """
    effective = n - 1 if p_cap is None else min(p_cap, n - 1)
    checked = 0
    try:
        for p in range(0, effective + 1):
            for sigma in K.faces_of_dim(p, budget=budget):
                checked += 1
                if checked > budget:
                    raise BudgetExhausted("simplex budget exhausted")
                link = K.link_of(sigma)
                if not homological_connectivity(link, n - p - 2, budget=budget):
                    return Verdict(
                        FAIL,
                        detail=f"link of {sigma} is not {n - p - 2}-connected",
                        witness=sigma,
                        stats={"checked": checked},
                    )
    except (BudgetExhausted, CapExceeded) as exc:
        return Verdict(INCONCLUSIVE, detail=str(exc), stats={"checked": checked})
    if p_cap is not None and p_cap < n - 1:
        return Verdict(
            INCONCLUSIVE,
            detail=f"only p <= {p_cap} checked; need p <= {n - 1}",
            stats={"checked": checked},
        )
    return Verdict(PASS, detail=f"all links to level {n} verified", stats={"checked": checked})


class SimplicialMap:
    """Vertex map sending simplices to simplices (collapses allowed)."""

    def __init__(self, source, target, mapping: dict):
        self.source = source
        self.target = target
        self.mapping = dict(mapping)
        for v in source.vertices:
            if v not in self.mapping:
                raise InputError(f"vertex {v!r} has no image")
            if self.mapping[v] not in target._index:
                raise InputError(f"image {self.mapping[v]!r} is not a target vertex")
        if isinstance(source, FlagComplex):
            for u, v in source.faces_of_dim(1):
                fu, fv = self.mapping[u], self.mapping[v]
                if fu != fv and not target.adjacent(fu, fv):
                    raise InputError(f"edge ({u!r}, {v!r}) does not map to a simplex")
        else:
            for f in source.faces:
                if not target.has_face({self.mapping[v] for v in f}):
                    raise InputError(f"face {set(f)!r} does not map to a simplex")

    def __call__(self, v):
        return self.mapping[v]

    def apply(self, face) -> frozenset:
        return frozenset(self.mapping[v] for v in face)


class SymRelation:
    """Symmetric relation on the vertices of a complex.

    Stored as a set of unordered pairs; ``edge_compatible`` checks that
    every edge of the complex is related.
    """

    def __init__(self, complex_, pairs):
        self.complex = complex_
        self.pairs = set()
        for a, b in pairs:
            if a not in complex_._index or b not in complex_._index:
                raise InputError("relation pair outside the vertex set")
            self.pairs.add(frozenset((a, b)))

    @classmethod
    def complete(cls, complex_) -> "SymRelation":
        vs = complex_.vertices
        return cls(complex_, [(a, b) for a in vs for b in vs])

    def holds(self, a, b) -> bool:
        return frozenset((a, b)) in self.pairs

    def is_edge_compatible(self) -> bool:
        return all(self.holds(u, v) for u, v in self.complex.faces_of_dim(1))


def _general_position_subsets(candidates, rel: SymRelation | None, cap: int):
    """All subsets of ``candidates`` (in general position when rel given)."""
    out = [()]
    count = 1
    for i, c in enumerate(candidates):
        new = []
        for sub in out:
            if rel is None or all(rel.holds(c, s) for s in sub):
                new.append(sub + (c,))
                count += 1
                if count > cap:
                    raise BudgetExhausted("too many candidate subsets")
        out.extend(new)
    return out


def check_link_lifting(
    f: SimplicialMap,
    rel: SymRelation | None = None,
    budget: int = 200_000,
) -> Verdict:
    """Exhaustive check of the link lifting property on finite complexes.

    Plain version (rel None): for every target vertex y and every vertex
    set A with f(A) inside lk(y), some x in the fiber over y has A inside
    lk(x).  Since the lift condition only tightens as A grows, it is
    equivalent to check the single maximal A = all candidates.

    Relation version: A additionally ranges over sets in general position
    with respect to rel, and the lift x must in addition satisfy
    rel(b, x) for every b in an arbitrary finite vertex set B.  For each
    fixed A the quantifier over B collapses to the single worst case
    B = all vertices of the source, because a lift that works there works
    for every smaller B; the relation need not be reflexive, so this worst
    case genuinely constrains x.
    """
    X, Y = f.source, f.target
    if rel is not None and not rel.is_edge_compatible():
        raise InputError("relation is not edge compatible")
    checked = 0
    all_x = list(X.vertices)
    rel_universal = (
        None
        if rel is None
        else [x for x in all_x if all(rel.holds(b, x) for b in all_x)]
    )
    for y in Y.vertices:
        fiber = [x for x in all_x if f(x) == y]
        candidates = [a for a in all_x if f(a) != y and Y.adjacent(f(a), y)]
        if rel is None:
            checked += 1
            ok = any(
                all(X.adjacent(a, x) for a in candidates) and x not in candidates
                for x in fiber
            )
            if not ok:
                return Verdict(
                    FAIL,
                    detail=f"no lift over {y!r} for the maximal candidate set",
                    witness={"y": y, "A": tuple(candidates), "B": None},
                    stats={"checked": checked},
                )
            continue
        try:
            subsets = _general_position_subsets(candidates, rel, budget - checked)
        except BudgetExhausted as exc:
            return Verdict(INCONCLUSIVE, detail=str(exc), stats={"checked": checked})
        for A in subsets:
            checked += 1
            if checked > budget:
                return Verdict(
                    INCONCLUSIVE, detail="budget exhausted", stats={"checked": checked}
                )
            ok = any(
                x in rel_universal
                and x not in A
                and all(X.adjacent(a, x) for a in A)
                for x in fiber
            )
            if not ok:
                return Verdict(
                    FAIL,
                    detail=f"no lift over {y!r} with A = {A!r} against B = X_0",
                    witness={"y": y, "A": A, "B": tuple(all_x)},
                    stats={"checked": checked},
                )
    return Verdict(PASS, detail="all lifts found", stats={"checked": checked})


def preserves_links(f: SimplicialMap, budget: int = DEFAULT_SIMPLEX_BUDGET) -> bool:
    """f(lk(zeta)) inside lk(f(zeta)) for every simplex zeta of the source.

    Fails in particular when a link vertex collapses into f(zeta) itself,
    since the link excludes the simplex's own vertices.
    """
    X, Y = f.source, f.target
    d = 0
    while True:
        faces = X.faces_of_dim(d, budget=budget)
        if not faces:
            return True
        for zeta in faces:
            image = f.apply(zeta)
            link = X.link_of(zeta)
            for v in link.vertices:
                fv = f(v)
                if fv in image:
                    return False
                if not Y.has_face(image | {fv}):
                    return False
        d += 1


@dataclass
class TransitivityReport:
    edge_hypothesis: bool
    component_hypothesis: bool
    connected_realization: bool
    hypotheses_hold: bool
    single_orbit: bool
    orbits: list[set]
    consistent: bool


def action_transitivity(K, generators) -> TransitivityReport:
    """Check the flag-complex transitivity criterion for a vertex action.

    ``generators`` are permutations of the vertex labels (dicts) that must
    preserve adjacency.  Hypotheses: (1) the endpoints of every edge lie
    in one orbit of the generated group; (2) any two vertices in the same
    path component of the vertex SET are related, which for a finite
    discrete vertex set is vacuous; (3) the realization is path connected,
    i.e. the 1-skeleton is a connected nonempty graph.  The conclusion
    asserted is a single vertex orbit.
    """
    perms = []
    for g in generators:
        g = dict(g)
        if set(g) != set(K.vertices) or set(g.values()) != set(K.vertices):
            raise InputError("generator is not a vertex permutation")
        for u, v in itertools.combinations(K.vertices, 2):
            if K.adjacent(u, v) != K.adjacent(g[u], g[v]):
                raise InputError("generator does not preserve adjacency")
        perms.append(g)
        perms.append({v: u for u, v in g.items()})
    # Orbits under the generated group: closure under all generators and
    # inverses.
    orbits = []
    seen = set()
    for v in K.vertices:
        if v in seen:
            continue
        orb = {v}
        frontier = [v]
        while frontier:
            u = frontier.pop()
            for g in perms:
                w = g[u]
                if w not in orb:
                    orb.add(w)
                    frontier.append(w)
        seen |= orb
        orbits.append(orb)
    orbit_of = {}
    for orb in orbits:
        for v in orb:
            orbit_of[v] = id(orb)
    edge_hyp = all(
        orbit_of[u] == orbit_of[v] for u, v in K.faces_of_dim(1)
    )
    comp_hyp = True  # vacuous: path components of a finite discrete set
    connected = K.is_connected()
    hyps = edge_hyp and comp_hyp and connected
    single = len(orbits) == 1 and K.n_vertices > 0
    consistent = (not hyps) or single
    return TransitivityReport(
        edge_hypothesis=edge_hyp,
        component_hypothesis=comp_hyp,
        connected_realization=connected,
        hypotheses_hold=hyps,
        single_orbit=single,
        orbits=orbits,
        consistent=consistent,
    )


# ---------------------------------------------------------------------------
# Relative homology and the inclusion-connectivity harness
# ---------------------------------------------------------------------------


def relative_homology(X, y_labels, max_dim: int, budget: int = DEFAULT_SIMPLEX_BUDGET) -> dict[int, DegreeHomology]:
    """H_d(X, Y) for the full subcomplex Y spanned by ``y_labels``.

    Computed from the relative chain complex: the degree-d basis is the
    d-simplices of X not contained in Y, and boundaries drop faces lying
    in Y.  This is the definition of relative homology, no excision
    needed.
    """
    yset = set(y_labels)
    rel_faces: dict[int, list[tuple]] = {}
    for d in range(0, max_dim + 2):
        fs = [f for f in X.faces_of_dim(d, budget=budget) if not set(f) <= yset]
        rel_faces[d] = fs
    out = {}
    for d in range(0, max_dim + 1):
        lo = rel_faces[d]
        hi = rel_faces[d + 1]
        index = {f: i for i, f in enumerate(lo)}
        mat = [[0] * len(hi) for _ in range(len(lo))]
        for j, f in enumerate(hi):
            for t in range(len(f)):
                face = f[:t] + f[t + 1 :]
                if face in index:
                    mat[index[face]][j] = (-1) ** t
        res_hi = smith_normal_form(mat) if lo and hi else None
        rank_hi = res_hi.rank if res_hi else 0
        if d == 0:
            rank_lo = 0
        else:
            lo_prev = rel_faces[d - 1]
            index_prev = {f: i for i, f in enumerate(lo_prev)}
            mat_prev = [[0] * len(lo) for _ in range(len(lo_prev))]
            for j, f in enumerate(lo):
                for t in range(len(f)):
                    face = f[:t] + f[t + 1 :]
                    if face in index_prev:
                        mat_prev[index_prev[face]][j] = (-1) ** t
            rank_lo = (
                smith_normal_form(mat_prev).rank if lo_prev and lo else 0
            )
        torsion = tuple(x for x in (res_hi.diag if res_hi else []) if x > 1)
        out[d] = DegreeHomology(betti=len(lo) - rank_lo - rank_hi, torsion=torsion)
    return out


@dataclass
class InclusionReport:
    hypothesis_holds: bool
    first_violation: object
    conclusion_holds: bool | None
    relative: dict[int, DegreeHomology] | None


def inclusion_connectivity_harness(X, y_labels, n: int, budget: int = DEFAULT_SIMPLEX_BUDGET) -> InclusionReport:
    """Test the inclusion-connectivity criterion on a full subcomplex.

    Hypothesis: for every p-simplex sigma of X (p <= n suffices; higher p
    faces a vacuous level), the complex Y meet lk(sigma) is (n-p-1)-
    connected.  Consequence checked when the hypothesis holds: the
    relative homology H_i(X, Y) vanishes for i <= n, which is what
    n-connectivity of the inclusion implies on homology.
    """
    yset = set(y_labels)
    for p in range(0, n + 1):
        for sigma in X.faces_of_dim(p, budget=budget):
            link = X.link_of(sigma)
            sub = link.induced([v for v in link.vertices if v in yset])
            if not homological_connectivity(sub, n - p - 1, budget=budget):
                return InclusionReport(
                    hypothesis_holds=False,
                    first_violation=sigma,
                    conclusion_holds=None,
                    relative=None,
                )
    rel = relative_homology(X, yset, max_dim=n, budget=budget)
    ok = all(rel[d].is_zero() for d in range(0, n + 1))
    return InclusionReport(
        hypothesis_holds=True, first_violation=None, conclusion_holds=ok, relative=rel
    )
