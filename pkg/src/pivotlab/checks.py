"""Self-check suites behind ``pivotlab verify`` and the acceptance tests.

Each suite returns a :class:`SuiteResult`; failures carry enough of the input
to reproduce them.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, product

import numpy as np

from .anf import BooleanFunction, Z4Function, monomial
from .canon import brute_force_min, canon_key
from .graph import Graph, admissible_edges, is_admissible
from .identities import verify_h_identities, verify_lc_chain, verify_napf, verify_pivot_identity
from .orbits import all_graphs, labelled_graphs, pivot_rows, rows_connected
from .spectral import (
    TransformSpec,
    apply,
    bipolar,
    count_flat,
    count_flat_quadratic,
    family_bounds,
    flat_h_sets,
    flat_specs,
    is_flat,
    is_flat_quadratic,
)


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, what) -> None:
        if len(self.failures) < 50:
            self.failures.append(what)
        else:
            self.details["truncated_failures"] = self.details.get("truncated_failures", 0) + 1

    def as_dict(self) -> dict:
        return {"suite": self.name, "ok": self.ok, "cases": self.cases,
                "failures": [str(f) for f in self.failures], **self.details}


# -- generators --------------------------------------------------------------------


def random_hypergraph(rng: random.Random, n: int, max_deg: int = 4, density: float = 0.3) -> BooleanFunction:
    terms = [m for m in range(1 << n) if 2 <= m.bit_count() <= max_deg and rng.random() < density]
    return BooleanFunction(n, frozenset(terms))


def random_cubic(rng: random.Random, n: int) -> BooleanFunction:
    """Degree exactly 3; quadratic and cubic terms drawn at random densities."""
    quads = [m for m in range(1 << n) if m.bit_count() == 2]
    cubes = [m for m in range(1 << n) if m.bit_count() == 3]
    pq, pc = rng.uniform(0.2, 0.8), rng.uniform(0.1, 0.5)
    terms = {m for m in quads if rng.random() < pq} | {m for m in cubes if rng.random() < pc}
    if not any(m.bit_count() == 3 for m in terms):
        terms.add(rng.choice(cubes))
    lin = {1 << k for k in range(n) if rng.random() < 0.2}
    return BooleanFunction(n, frozenset(terms | lin))


def random_function(rng: random.Random, n: int) -> BooleanFunction:
    return BooleanFunction(n, frozenset(m for m in range(1 << n) if rng.random() < 0.5))


def all_functions(n: int):
    for code in range(1 << (1 << n)):
        yield BooleanFunction(n, frozenset(m for m in range(1 << n) if code >> m & 1))


# -- criterion-level suites -----------------------------------------------------------


def check_clique(direct_max: int = 10, rank_max: int = 20) -> SuiteResult:
    res = SuiteResult("clique-law")
    for n in range(2, rank_max + 1):
        k = Graph.complete(n)
        want = 1 << (n - 1)
        got_rank = count_flat_quadratic(k, "IH")
        res.cases += 1
        if got_rank != want:
            res.fail(f"rank n={n}: {got_rank} != {want}")
        if n <= direct_max:
            got = count_flat(k.to_function(), "IH")
            res.cases += 1
            if got != want:
                res.fail(f"direct n={n}: {got} != {want}")
    return res


GENPIV = ("n=6; x0*x1*x2+x0*x1*x3+x0*x1*x5+x0*x2*x4+x0*x2*x5+x0*x3*x4+x0*x3*x5+x0*x4*x5"
          "+x1*x2*x3+x1*x2*x4+x1*x2*x5+x1*x3*x4+x1*x4*x5+x2*x3*x4+x2*x3*x5+x3*x4*x5")


def check_genpiv() -> SuiteResult:
    res = SuiteResult("genpiv-witness", cases=1)
    p = BooleanFunction.parse(GENPIV)
    specs = sorted(flat_specs(p, "IH"))
    res.details["flat_specs"] = specs
    if len(p.terms) != 16 or p.degree != 3:
        res.fail("witness is not the 16-term cubic")
    if specs != ["HHHHHH", "IIIIII"]:
        res.fail(f"flat set {specs}")
    return res


def check_pivot_identity(trials: int = 1000, max_n: int = 6, max_deg: int = 4, seed: int = 0,
                         graphs_max_n: int = 6) -> SuiteResult:
    """Random hypergraphs (every admissible edge, both orientations) and every connected labelled graph."""
    res = SuiteResult("pivot-identity")
    rng = random.Random(seed)
    edges_seen = 0
    for _ in range(trials):
        n = rng.randint(2, max_n)
        p = random_hypergraph(rng, n, max_deg, rng.uniform(0.15, 0.5))
        for u, v in admissible_edges(p):
            for a, b in ((u, v), (v, u)):
                res.cases += 1
                edges_seen += 1
                if not verify_pivot_identity(p, a, b):
                    res.fail(f"{p} edge {a}{b}")
    for n in range(2, graphs_max_n + 1):
        for rows in labelled_graphs(n, "connected"):
            p = Graph(n, rows).to_function()
            for u, v in admissible_edges(p):
                res.cases += 1
                if not verify_pivot_identity(p, u, v):
                    res.fail(f"graph {rows} edge {u}{v}")
    res.details["random_edges"] = edges_seen
    return res


def pivot_reachable_h_sets(g: Graph) -> set[frozenset[int]]:
    """H-position sets reached by pivot sequences (symmetric differences, H is an involution)."""
    start = (g.rows, 0)
    seen = {start}
    queue = deque([start])
    sets = {0}
    while queue:
        rows, x = queue.popleft()
        for u in range(len(rows)):
            for v in range(u + 1, len(rows)):
                if rows[u] >> v & 1:
                    nxt = (pivot_rows(rows, u, v, True), x ^ (1 << u) ^ (1 << v))
                    if nxt not in seen:
                        seen.add(nxt)
                        sets.add(nxt[1])
                        queue.append(nxt)
    return {frozenset(k for k in range(g.n) if x >> k & 1) for x in sets}


def check_quadpiv(max_n: int = 6) -> SuiteResult:
    res = SuiteResult("quadpiv")
    for n in range(1, max_n + 1):
        for rows in labelled_graphs(n, "connected"):
            g = Graph(n, rows)
            res.cases += 1
            if flat_h_sets(g.to_function()) != pivot_reachable_h_sets(g):
                res.fail(f"graph {rows}")
    return res


def check_only_pivot(trials: int = 1000, max_n: int = 6, seed: int = 0) -> SuiteResult:
    res = SuiteResult("only-pivot")
    rng = random.Random(seed)
    flat_pairs = 0
    for _ in range(trials):
        n = rng.randint(3, max_n)
        p = random_cubic(rng, n)
        s = bipolar(p)
        for i, j in combinations(range(n), 2):
            kinds = ["I"] * n
            kinds[i] = kinds[j] = "H"
            flat = is_flat(apply(s, "".join(kinds)))
            res.cases += 1
            flat_pairs += flat
            if flat != is_admissible(p, i, j):
                res.fail(f"{p} pair {i}{j}: flat={flat}")
    res.details["flat_pairs"] = flat_pairs
    return res


def check_family(max_n: int = 7, exhaustive_t: int = 3, samples: int = 24, seed: int = 0) -> SuiteResult:
    """Lower bounds for every h on the first t variables (t <= exhaustive_t), sampled h beyond;
    tightness at h = x_0...x_{t-1}."""
    from .anf import family_member

    res = SuiteResult("family")
    rng = random.Random(seed)
    not_tight = []
    for n in range(1, max_n + 1):
        for t in range(n):
            ih_bound, ihn_bound = family_bounds(n, t)
            cube = [m for m in range(1 << t)]
            if t <= exhaustive_t:
                hs = [frozenset(m for m in cube if code >> m & 1) for code in range(1 << len(cube))]
            else:
                hs = [frozenset(), frozenset({(1 << t) - 1})]
                hs += [frozenset(m for m in cube if rng.random() < 0.5) for _ in range(samples)]
            for terms in hs:
                f = family_member(n, t, BooleanFunction(n, terms))
                ih = count_flat(f, "IH")
                ihn = count_flat(f, "IHN")
                res.cases += 1
                if ih < ih_bound:
                    res.fail(f"IH n={n} t={t} h={sorted(terms)}: {ih} < {ih_bound}")
                if ihn < ihn_bound:
                    res.fail(f"IHN n={n} t={t} h={sorted(terms)}: {ihn} < {ihn_bound}")
            top = family_member(n, t, BooleanFunction(n, frozenset({(1 << t) - 1})))
            ih_top = count_flat(top, "IH")
            res.cases += 1
            if ih_top != ih_bound:
                not_tight.append({"n": n, "t": t, "count": ih_top, "bound": ih_bound})
                res.fail(f"tightness n={n} t={t}: count {ih_top} != bound {ih_bound}")
    res.details["not_tight"] = not_tight
    return res


def check_rank_criterion(max_n: int = 5) -> SuiteResult:
    """Spec-by-spec agreement of the rank test with direct transforms, all labelled graphs, all 3^n specs."""
    res = SuiteResult("rank-criterion")
    for n in range(1, max_n + 1):
        specs = ["".join(k) for k in product("IHN", repeat=n)]
        for rows in labelled_graphs(n):
            g = Graph(n, rows)
            direct = set(flat_specs(g.to_function(), "IHN"))
            by_rank = {s for s in specs if is_flat_quadratic(g, TransformSpec(s))}
            res.cases += 1
            if direct != by_rank:
                res.fail(f"graph {rows}: symmetric difference {sorted(direct ^ by_rank)[:4]}")
            for fam in ("IH", "IHN", "HN"):
                want = sum(1 for s in direct if set(s) <= set(fam))
                if count_flat_quadratic(g, fam) != want:
                    res.fail(f"graph {rows} {fam}: fast count {count_flat_quadratic(g, fam)} != {want}")
    return res


def check_canonical(max_n: int = 7, labelled_max_n: int = 5, relabels: int = 3, seed: int = 0) -> SuiteResult:
    """canonical_form induces the same partition as the all-permutations minimum.

    Every labelled graph for n <= labelled_max_n; for larger n every isomorphism
    class representative plus random relabellings of it.
    """
    res = SuiteResult("canonical-form")
    rng = random.Random(seed)
    for n in range(1, labelled_max_n + 1):
        ours: dict = {}
        for rows in labelled_graphs(n):
            res.cases += 1
            ours.setdefault(canon_key(rows), set()).add(brute_force_min(rows))
        if any(len(v) != 1 for v in ours.values()):
            res.fail(f"n={n}: a canonical class contains two brute-force classes")
        if len({next(iter(v)) for v in ours.values()}) != len(ours):
            res.fail(f"n={n}: a brute-force class split across canonical forms")
    for n in range(labelled_max_n + 1, max_n + 1):
        reps = all_graphs(n)
        brute = {_np_brute_min(r) for r in reps}
        res.cases += len(reps)
        if len(brute) != len(reps):
            res.fail(f"n={n}: two canonical classes share a brute-force minimum")
        for r in reps:
            for _ in range(relabels):
                perm = list(range(n))
                rng.shuffle(perm)
                res.cases += 1
                if canon_key(Graph(n, r).relabel(perm).rows) != r:
                    res.fail(f"n={n}: relabelling of {r} changes the form")
    return res


_PERM_CACHE: dict[int, np.ndarray] = {}


def _np_brute_min(rows) -> tuple[int, ...]:
    """All-permutations minimum via numpy (fast enough for n <= 8)."""
    from itertools import permutations

    n = len(rows)
    perms = _PERM_CACHE.get(n)
    if perms is None:
        perms = _PERM_CACHE[n] = np.array(list(permutations(range(n))), dtype=np.int64)
    adj = np.array([[r >> c & 1 for c in range(n)] for r in rows], dtype=np.int64)
    # order[k] = old vertex at new position k: new adjacency A[order][:, order]
    sub = adj[perms[:, :, None], perms[:, None, :]]
    weights = 1 << np.arange(n, dtype=np.int64)
    new_rows = sub @ weights
    key = np.zeros(len(perms), dtype=np.int64)
    for k in range(n):
        key = key * (1 << n) + new_rows[:, k]
    best = int(np.argmin(key))
    return tuple(int(x) for x in new_rows[best])


# -- transform identities -----------------------------------------------------------


def _slot_points(n: int, i: int) -> list[tuple[int, int]]:
    return [(x, x | (1 << i)) for x in range(1 << n) if not x >> i & 1]


def _covering(n: int, i: int, configs: list, nfuncs: int):
    """Yield table tuples in which every slot (pair of points differing in x_i)
    takes every local configuration; ``config`` = (values at lower point, values at upper point)."""
    slots = _slot_points(n, i)
    K = len(configs)
    for t in range(K):
        tables = [np.zeros(1 << n, dtype=np.int64) for _ in range(nfuncs)]
        for s, (x0, x1) in enumerate(slots):
            lo, hi = configs[(t + s) % K]
            for f in range(nfuncs):
                tables[f][x0] = lo[f]
                tables[f][x1] = hi[f]
        yield tables


def _bf(table, n) -> BooleanFunction:
    return BooleanFunction.from_truth_table(np.asarray(table, dtype=np.uint8), n)


def check_transform_identities(exhaustive_n: int = 4, trials: int = 10_000, max_n: int = 6, seed: int = 0) -> SuiteResult:
    """verify_napf, verify_h_identities (all three branches) and verify_lc_chain.

    Exhaustive part: every Boolean function on n <= exhaustive_n variables and
    every admissible ordered edge for the LC chain; for the two single-position
    identities, literal enumeration for n <= 2 and, for larger n, inputs in
    which every slot of position i takes every local configuration.  Both
    sides of those identities are computed slot by slot, so this covers every
    evaluation any input of that size can produce.
    """
    res = SuiteResult("transform-identities")
    branches = {"general": 0, "notinm": 0, "inm": 0}

    def h_check(factors, p, i, tag):
        rep = verify_h_identities(factors, p, i)
        res.cases += 1
        branches[rep["branch"]] += 1
        if not rep["general"] or rep["branch_ok"] is False:
            res.fail(f"{tag}: H n={p.n} i={i} p={p} factors={[str(f) for f in factors]} {rep}")

    def napf_check(m, z, j, tag):
        res.cases += 1
        if not verify_napf(m, z, j):
            res.fail(f"{tag}: napf n={m.n} j={j} m={m} p={z.table.tolist()}")

    def chain_check(p, l, j, tag):
        rep = verify_lc_chain(p, l, j)
        res.cases += 1
        if not rep["ok"]:
            res.fail(f"{tag}: lc-chain {p} edge {l}{j} {rep}")

    # literal enumeration, small n
    for n in range(1, min(exhaustive_n, 2) + 1):
        fns = list(all_functions(n))
        for j in range(n):
            for m in fns:
                for code in range(4 ** (1 << n)):
                    table = [(code >> (2 * x)) & 3 for x in range(1 << n)]
                    napf_check(m, Z4Function(n, np.array(table)), j, "exhaustive")
            for m in fns:
                for p in fns:
                    h_check([m], p, j, "exhaustive")
            for a, b in product(fns, repeat=2):
                for p in fns:
                    h_check([a, b], p, j, "exhaustive")
    # slot coverage for the single-position identities, larger n
    napf_cfg = [((m0, p0), (m1, p1)) for m0, m1 in product((0, 1), repeat=2) for p0, p1 in product(range(4), repeat=2)]
    for n in range(3, exhaustive_n + 1):
        for j in range(n):
            for m_t, p_t in _covering(n, j, napf_cfg, 2):
                napf_check(_bf(m_t, n), Z4Function(n, p_t), j, "slot-cover")
            for k in (1, 2, 3):
                # general: arbitrary factor values at both points
                cfg = [(lo + (p0,), hi + (p1,))
                       for lo in product((0, 1), repeat=k) for hi in product((0, 1), repeat=k)
                       for p0, p1 in product((0, 1), repeat=2)]
                for tabs in _covering(n, j, cfg, k + 1):
                    h_check([_bf(t, n) for t in tabs[:k]], _bf(tabs[k], n), j, "slot-cover")
                # notinm: factors equal at both points
                cfg = [(vals + (p0,), vals + (p1,)) for vals in product((0, 1), repeat=k)
                       for p0, p1 in product((0, 1), repeat=2)]
                for tabs in _covering(n, j, cfg, k + 1):
                    h_check([_bf(t, n) for t in tabs[:k]], _bf(tabs[k], n), j, "slot-cover")
                # inm: k factors x_j + g, plus one factor free of x_j
                cfg = [(vals + (r, p0), tuple(1 - v for v in vals) + (r, p1))
                       for vals in product((0, 1), repeat=k) for r in (0, 1)
                       for p0, p1 in product((0, 1), repeat=2)]
                for tabs in _covering(n, j, cfg, k + 2):
                    factors = [_bf(t, n) for t in tabs[:k + 1]]
                    if not factors[k].depends_on(j) and factors[k] == BooleanFunction.one(n):
                        factors = factors[:k]
                    h_check(factors, _bf(tabs[k + 1], n), j, "slot-cover")
    # LC chain: literal enumeration
    for n in range(2, exhaustive_n + 1):
        for p in all_functions(n):
            for u, v in admissible_edges(p):
                chain_check(p, u, v, "exhaustive")
                chain_check(p, v, u, "exhaustive")
    exhaustive_cases = res.cases

    rng = random.Random(seed)
    for _ in range(trials):
        n = rng.randint(1, max_n)
        j = rng.randrange(n)
        napf_check(random_function(rng, n), Z4Function(n, np.array([rng.randrange(4) for _ in range(1 << n)])), j, "random")
        p = random_function(rng, n)
        kind = rng.randrange(3)
        if kind == 0:
            factors = [random_function(rng, n) for _ in range(rng.randint(1, 3))]
        elif kind == 1:
            factors = [random_function(rng, n).restrict(j, 0) for _ in range(rng.randint(1, 3))]
        else:
            xj = BooleanFunction.var(n, j)
            factors = [xj + random_function(rng, n).restrict(j, 0) for _ in range(rng.randint(1, 3))]
            if rng.random() < 0.5:
                factors.append(random_function(rng, n).restrict(j, 0))
        h_check(factors, p, j, "random")
        if n >= 2:
            q = random_hypergraph(rng, n, 4, rng.uniform(0.2, 0.5)) + _random_affine(rng, n)
            edges = admissible_edges(q)
            if edges:
                u, v = rng.choice(edges)
                if rng.random() < 0.5:
                    u, v = v, u
                chain_check(q, u, v, "random")
    res.details["exhaustive_cases"] = exhaustive_cases
    res.details["random_cases"] = res.cases - exhaustive_cases
    res.details["branches"] = branches
    for b, count in branches.items():
        if not count:
            res.fail(f"branch {b} never exercised")
    return res


def _random_affine(rng: random.Random, n: int) -> BooleanFunction:
    return BooleanFunction(n, frozenset(m for m in [0] + [1 << k for k in range(n)] if rng.random() < 0.3))


SUITES = {
    "clique": check_clique,
    "genpiv": check_genpiv,
    "pivot-identity": check_pivot_identity,
    "quadpiv": check_quadpiv,
    "only-pivot": check_only_pivot,
    "transform-identities": check_transform_identities,
    "family": check_family,
    "rank-criterion": check_rank_criterion,
    "canonical": check_canonical,
}


def monomial_product(n: int, t: int) -> BooleanFunction:
    return BooleanFunction(n, frozenset({monomial(*range(t))}))


def connected_count(n: int) -> int:
    return sum(1 for r in all_graphs(n) if rows_connected(r))
