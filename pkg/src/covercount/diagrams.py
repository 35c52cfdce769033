"""Floor diagrams over E x P^1 and pearl diagrams over abelian surfaces.

Both kinds of diagram are weighted oriented graphs with two special
vertex classes: flat vertices (bivalent, one edge in, one edge out,
equal weights) and labeled vertices (floors or pearls) carrying a
degree label a_v >= 1 and, in lambda mode, a genus g_v >= 1.

Floor diagrams additionally have univalent infinite vertices (sources
and sinks) whose edges realize a labeled signed end profile; the
interior vertices carry a total order compatible with the edge
orientation.  Pearl diagrams instead map onto an oriented cycle,
bijectively on vertices, and their edges wind around the cycle so the
total weight crossing every gap equals the cover degree |B|.

Enumeration fixes the number of bounded edges, the interleaving of
flat and labeled vertices, and the composition of the total degree,
then runs a depth-first search over open (started, not yet terminated)
edges.  Open edges are tracked as a multiset keyed by origin and
weight, so each isomorphism class is produced exactly once; validity
(connectivity, tree/forest condition on the flat complement, genus) is
checked on the completed candidate.
"""

from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd

from covercount.arith import divisors
from covercount.group_algebra import GroupElement, torsion_average
from covercount.mcf_core import NStarModule
from covercount.refined_divisors import refined_sigma

MAX_GENUS = 4
MAX_FLOOR_DEGREE = 12
MAX_PEARL_NORM = 8
MAX_PEARL_DEGREE = 8


class InvalidDiagramError(ValueError):
    """A diagram violating one of the structural invariants."""


class BoundExceededError(ValueError):
    """Enumeration parameters beyond the configured bounds."""


# --- local vertex contribution ----------------------------------------------


def wg_polynomial(g, w):
    """The weight polynomial W_g(w), homogeneous of degree 2g - 2.

    W_g(w) = (1/prod w_i) (sum_S (-1)^|S| w_S^(n+2g-2)) (-1)^(n+g-1)
             / (n+2g-2)! over all subsets S of the index set.
    """
    w = tuple(w)
    n = len(w)
    if g < 0:
        raise ValueError("wg_polynomial requires g >= 0")
    if n == 0 or any(x == 0 for x in w) or sum(w) != 0:
        raise ValueError("w must be balanced with nonzero entries")
    exp = n + 2 * g - 2
    total = 0
    for mask in range(1 << n):
        s = sum(w[i] for i in range(n) if mask >> i & 1)
        total += (-1) ** bin(mask).count("1") * s**exp
    prod = 1
    for x in w:
        prod *= x
    return Fraction(total * (-1) ** (n + g - 1), prod * factorial(exp))


# --- diagram types -----------------------------------------------------------


@dataclass(frozen=True)
class FloorDiagram:
    """Floor diagram with ordered interior vertices and labeled ends.

    Vertices 0..k-1 are the interior flats and floors in their total
    order; vertex k+i is the infinite vertex of end i of the profile.
    Edges are (tail, head, weight) with the orientation source -> sink.
    """

    kinds: tuple
    a: tuple
    g: tuple
    edges: tuple
    profile: tuple
    genus: int

    @property
    def n_interior(self):
        return len(self.kinds) - len(self.profile)

    def floors(self):
        return tuple(
            p for p in range(self.n_interior) if self.kinds[p] == "floor"
        )

    def flats(self):
        return tuple(
            p for p in range(self.n_interior) if self.kinds[p] == "flat"
        )

    def bounded_edges(self):
        k = self.n_interior
        return tuple(e for e in self.edges if e[0] < k and e[1] < k)

    def eprime_edges(self):
        """Edges, bounded or ends, with no flat endpoint."""
        flats = set(self.flats())
        return tuple(
            e for e in self.edges if e[0] not in flats and e[1] not in flats
        )

    @property
    def norm(self):
        out = 0
        for wi in self.profile:
            out = gcd(out, abs(wi))
        return out

    def gcd_all(self):
        out = 0
        for (_, _, wgt) in self.edges:
            out = gcd(out, wgt)
        for p in self.floors():
            out = gcd(out, self.a[p])
        return out

    def valence(self, p):
        return sum((e[0] == p) + (e[1] == p) for e in self.edges)

    def vertex_weights(self, p):
        """Signed adjacent weights at p: outgoing positive, incoming negative."""
        out = []
        for (t, h, wgt) in self.edges:
            if t == p:
                out.append(wgt)
            if h == p:
                out.append(-wgt)
        return tuple(out)


@dataclass(frozen=True)
class PearlDiagram:
    """Pearl diagram mapping onto an oriented cycle with len(kinds) slots.

    Edges are (origin, length, weight): the edge starts at the cycle
    position origin, crosses length >= 1 gaps in the cycle direction,
    and terminates at (origin + length) mod len(kinds).
    """

    kinds: tuple
    a: tuple
    g: tuple
    edges: tuple
    norm: int
    genus: int

    def pearls(self):
        return tuple(p for p, k in enumerate(self.kinds) if k == "pearl")

    def flats(self):
        return tuple(p for p, k in enumerate(self.kinds) if k == "flat")

    def head(self, edge):
        return (edge[0] + edge[1]) % len(self.kinds)

    def eprime_edges(self):
        flats = set(self.flats())
        return tuple(
            e
            for e in self.edges
            if e[0] not in flats and self.head(e) not in flats
        )

    def gcd_all(self):
        out = 0
        for (_, _, wgt) in self.edges:
            out = gcd(out, wgt)
        for p in self.pearls():
            out = gcd(out, self.a[p])
        return out

    def edge_gcd(self):
        out = 0
        for (_, _, wgt) in self.edges:
            out = gcd(out, wgt)
        return out

    def valence(self, p):
        return sum((e[0] == p) + (self.head(e) == p) for e in self.edges)

    def vertex_weights(self, p):
        out = []
        for e in self.edges:
            if e[0] == p:
                out.append(e[2])
            if self.head(e) == p:
                out.append(-e[2])
        return tuple(out)


# --- validity ----------------------------------------------------------------


def _components(vertices, adjacency):
    seen = set()
    comps = []
    for v in vertices:
        if v in seen:
            continue
        stack, comp = [v], set()
        while stack:
            u = stack.pop()
            if u in comp:
                continue
            comp.add(u)
            stack.extend(adjacency.get(u, ()))
        seen |= comp
        comps.append(comp)
    return comps


def validate_floor(d):
    """Check all structural invariants, raising InvalidDiagramError."""
    k = d.n_interior
    n = len(d.profile)
    if sum(d.profile) != 0 or any(w == 0 for w in d.profile):
        raise InvalidDiagramError("end profile must be balanced and nonzero")
    for p in range(k):
        if d.kinds[p] not in ("flat", "floor"):
            raise InvalidDiagramError(f"bad interior kind at {p}")
        if d.kinds[p] == "floor" and (d.a[p] < 1 or d.g[p] < 1):
            raise InvalidDiagramError(f"floor {p} needs a >= 1 and g >= 1")
    for i, wi in enumerate(d.profile):
        expected = "source" if wi < 0 else "sink"
        if d.kinds[k + i] != expected:
            raise InvalidDiagramError(f"end {i} has wrong infinite vertex")
    seen_ends = set()
    for (t, h, wgt) in d.edges:
        if wgt < 1:
            raise InvalidDiagramError("edge weights must be positive")
        if t < k and h < k:
            if not t < h:
                raise InvalidDiagramError(
                    "bounded edges must respect the total order"
                )
        elif t >= k:
            if d.profile[t - k] != -wgt or h >= k:
                raise InvalidDiagramError("bad source end")
            seen_ends.add(t - k)
        else:
            if d.profile[h - k] != wgt:
                raise InvalidDiagramError("bad sink end")
            seen_ends.add(h - k)
    if seen_ends != set(range(n)):
        raise InvalidDiagramError("each profile entry needs exactly one end")
    for p in range(k):
        inflow = sum(e[2] for e in d.edges if e[1] == p)
        outflow = sum(e[2] for e in d.edges if e[0] == p)
        if inflow != outflow:
            raise InvalidDiagramError(f"vertex {p} is not balanced")
        if d.kinds[p] == "flat":
            n_in = sum(1 for e in d.edges if e[1] == p)
            n_out = sum(1 for e in d.edges if e[0] == p)
            if (n_in, n_out) != (1, 1):
                raise InvalidDiagramError(f"flat {p} is not bivalent")
    adjacency = {}
    for (t, h, _) in d.edges:
        adjacency.setdefault(t, []).append(h)
        adjacency.setdefault(h, []).append(t)
    all_vertices = range(len(d.kinds))
    if len(_components(all_vertices, adjacency)) != 1:
        raise InvalidDiagramError("diagram is not connected")
    # complement of flats: acyclic with exactly one infinite vertex each
    flats = set(d.flats())
    cadj = {}
    cedges = 0
    for e in d.eprime_edges():
        cadj.setdefault(e[0], []).append(e[1])
        cadj.setdefault(e[1], []).append(e[0])
        cedges += 1
    cvertices = [v for v in all_vertices if v not in flats]
    comps = _components(cvertices, cadj)
    if cedges != len(cvertices) - len(comps):
        raise InvalidDiagramError("complement of flats has a cycle")
    for comp in comps:
        if sum(1 for v in comp if v >= k) != 1:
            raise InvalidDiagramError(
                "flat-complement component without a unique infinite vertex"
            )
    b1 = len(d.edges) - len(d.kinds) + 1
    total_g = sum(d.g[p] for p in d.floors())
    if b1 + total_g != d.genus:
        raise InvalidDiagramError("genus does not match b1 + sum of g_v")
    return True


def validate_pearl(d):
    npos = len(d.kinds)
    if npos == 0:
        raise InvalidDiagramError("pearl diagram needs at least one vertex")
    for p in range(npos):
        if d.kinds[p] not in ("flat", "pearl"):
            raise InvalidDiagramError(f"bad vertex kind at {p}")
        if d.kinds[p] == "pearl" and (d.a[p] < 1 or d.g[p] < 1):
            raise InvalidDiagramError(f"pearl {p} needs a >= 1 and g >= 1")
    crossings = [0] * npos
    for (origin, length, wgt) in d.edges:
        if wgt < 1 or length < 1:
            raise InvalidDiagramError("edges need positive weight and length")
        for step in range(length):
            crossings[(origin + step) % npos] += wgt
    if any(c != d.norm for c in crossings):
        raise InvalidDiagramError("gap flow does not equal the cover degree")
    for p in range(npos):
        weights = d.vertex_weights(p)
        if sum(weights) != 0:
            raise InvalidDiagramError(f"vertex {p} is not balanced")
        if d.kinds[p] == "flat" and len(weights) != 2:
            raise InvalidDiagramError(f"flat {p} is not bivalent")
    adjacency = {}
    for e in d.edges:
        adjacency.setdefault(e[0], []).append(d.head(e))
        adjacency.setdefault(d.head(e), []).append(e[0])
    if len(_components(range(npos), adjacency)) != 1:
        raise InvalidDiagramError("diagram is not connected")
    pearls = d.pearls()
    padj = {}
    pedges = 0
    for e in d.eprime_edges():
        padj.setdefault(e[0], []).append(d.head(e))
        padj.setdefault(d.head(e), []).append(e[0])
        pedges += 1
    comps = _components(pearls, padj)
    if len(comps) != 1 or pedges != len(pearls) - 1:
        raise InvalidDiagramError("complement of flats is not a tree")
    b1 = len(d.edges) - npos + 1
    total_g = sum(d.g[p] for p in pearls)
    if b1 + total_g != d.genus:
        raise InvalidDiagramError("genus does not match b1 + sum of g_v")
    return True


# --- scaling and module structure --------------------------------------------


def scale_diagram(d, k):
    """Multiply all edge weights and degree labels by k."""
    if k < 1:
        raise ValueError("scale_diagram requires k >= 1")
    edges = tuple((e[0], e[1], e[2] * k) for e in d.edges)
    a = tuple(x * k for x in d.a)
    if isinstance(d, FloorDiagram):
        return replace(
            d, edges=edges, a=a, profile=tuple(x * k for x in d.profile)
        )
    return replace(d, edges=edges, a=a, norm=d.norm * k)


def divide_diagram(d, k):
    """Inverse of scale_diagram for k dividing gcd_all(d)."""
    if k < 1 or d.gcd_all() % k:
        raise ValueError(f"{k} does not divide the diagram")
    edges = tuple((e[0], e[1], e[2] // k) for e in d.edges)
    a = tuple(x // k for x in d.a)
    if isinstance(d, FloorDiagram):
        return replace(
            d, edges=edges, a=a, profile=tuple(x // k for x in d.profile)
        )
    return replace(d, edges=edges, a=a, norm=d.norm // k)


def floor_diagram_module():
    return NStarModule(
        name="floor diagrams",
        norm_fn=lambda d: d.norm,
        divisor_fn=lambda d: [
            (k, divide_diagram(d, k)) for k in divisors(d.gcd_all())
        ],
        act_fn=lambda k, d: scale_diagram(d, k),
    )


def pearl_diagram_module():
    return NStarModule(
        name="pearl diagrams",
        norm_fn=lambda d: d.norm,
        divisor_fn=lambda d: [
            (k, divide_diagram(d, k)) for k in divisors(d.gcd_all())
        ],
        act_fn=lambda k, d: scale_diagram(d, k),
    )


# --- enumeration helpers ------------------------------------------------------


def _compositions(n, k):
    """Ordered compositions of n into k parts >= 1."""
    if k == 0:
        if n == 0:
            yield ()
        return
    for first in range(1, n - k + 2):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def _weak_compositions(n, k):
    """Ordered compositions of n into k parts >= 0."""
    for comp in _compositions(n + k, k):
        yield tuple(x - 1 for x in comp)


def _partitions(n, maxpart=None):
    """Unordered partitions of n into parts >= 1, as sorted tuples."""
    if n == 0:
        yield ()
        return
    if maxpart is None:
        maxpart = n
    for part in range(min(n, maxpart), 0, -1):
        for rest in _partitions(n - part, part):
            yield (part,) + rest


def _submultisets(counter):
    """All sub-multisets of a Counter, as dicts key -> positive count."""
    keys = sorted(counter)

    def rec(i):
        if i == len(keys):
            yield {}
            return
        key = keys[i]
        for rest in rec(i + 1):
            for count in range(counter[key] + 1):
                if count:
                    yield {**rest, key: count}
                else:
                    yield dict(rest)

    yield from rec(0)


# --- floor diagram enumeration -----------------------------------------------


def _floor_candidates(kinds_interior, a_assign, profile):
    """DFS over ordered interior positions, yielding sorted edge tuples.

    Open edges are keyed by ("v", p, w) for bounded edges started at
    position p, or ("e", i, w) for the source end i; each key maps to a
    multiplicity in a Counter.
    """
    nint = len(kinds_interior)
    out = []
    opens = Counter()
    for i, wi in enumerate(profile):
        if wi < 0:
            opens[("e", i, -wi)] += 1
    sinks_all = tuple(i for i, wi in enumerate(profile) if wi > 0)

    def in_edge(key, p):
        tag, ident, wgt = key
        tail = ident if tag == "v" else nint + ident
        return (tail, p, wgt)

    def rec(p, opens, sinks_left, edges):
        if p == nint:
            if not opens and not sinks_left:
                out.append(tuple(sorted(edges)))
            return
        if kinds_interior[p] == "flat":
            for key in sorted(opens):
                wgt = key[2]
                rest = opens.copy()
                rest[key] -= 1
                if not rest[key]:
                    del rest[key]
                edge = in_edge(key, p)
                cont = rest.copy()
                cont[("v", p, wgt)] += 1
                rec(p + 1, cont, sinks_left, edges + [edge])
                for j in sorted(sinks_left):
                    if profile[j] == wgt:
                        rec(
                            p + 1,
                            rest,
                            sinks_left - {j},
                            edges + [edge, (p, nint + j, wgt)],
                        )
            return
        # floor: terminate a sub-multiset, emit sink ends and new opens
        for tsub in _submultisets(opens):
            inflow = sum(key[2] * cnt for key, cnt in tsub.items())
            rest = opens.copy()
            new_edges = list(edges)
            for key, cnt in tsub.items():
                rest[key] -= cnt
                if not rest[key]:
                    del rest[key]
                new_edges.extend([in_edge(key, p)] * cnt)
            pool = sorted(j for j in sinks_left if profile[j] <= inflow)
            for size in range(len(pool) + 1):
                for subset in itertools.combinations(pool, size):
                    emitted = sum(profile[j] for j in subset)
                    if emitted > inflow:
                        continue
                    sink_edges = [(p, nint + j, profile[j]) for j in subset]
                    for parts in _partitions(inflow - emitted):
                        cont = rest.copy()
                        for wgt in parts:
                            cont[("v", p, wgt)] += 1
                        rec(
                            p + 1,
                            cont,
                            sinks_left - set(subset),
                            new_edges + sink_edges,
                        )
        return

    rec(0, opens, frozenset(sinks_all), [])
    return out


def _floor_task(args):
    """Enumerate one (bounded-edge count, flat placement, degree split) cell."""
    (flatpos, comp, profile, structural, genus) = args
    vf = len(comp)
    nint = len(flatpos) + vf
    kinds_interior = tuple(
        "flat" if p in set(flatpos) else "floor" for p in range(nint)
    )
    floor_positions = [
        p for p in range(nint) if kinds_interior[p] == "floor"
    ]
    a_assign = dict(zip(floor_positions, comp))
    kinds = kinds_interior + tuple(
        "source" if wi < 0 else "sink" for wi in profile
    )
    a_full = tuple(a_assign.get(p, 0) for p in range(len(kinds)))
    results = []
    for edges in _floor_candidates(kinds_interior, a_assign, profile):
        for gsplit in _weak_compositions(genus - structural, vf):
            g_full = [0] * len(kinds)
            for p, extra in zip(floor_positions, gsplit):
                g_full[p] = 1 + extra
            cand = FloorDiagram(
                kinds=kinds,
                a=a_full,
                g=tuple(g_full),
                edges=edges,
                profile=profile,
                genus=genus,
            )
            try:
                validate_floor(cand)
            except InvalidDiagramError:
                break
            results.append(cand)
    return results


def enumerate_floor_diagrams(g, a, w, g0=None, workers=1):
    """All genus g degree (a, w) floor diagrams, canonically sorted.

    In point mode (g0 is None) every floor has genus 1.  In lambda mode
    the first Betti number plus the floor count equals g0 and the floor
    genera distribute the remaining g - g0.
    """
    profile = tuple(w)
    if sum(profile) != 0 or any(x == 0 for x in profile) or not profile:
        raise ValueError("end profile must be nonempty, nonzero, balanced")
    if a < 1 or g < 1:
        raise ValueError("a and g must be positive")
    if g > MAX_GENUS or a > MAX_FLOOR_DEGREE:
        raise BoundExceededError(f"(g={g}, a={a}) beyond configured bounds")
    structural = g if g0 is None else g0
    if not 1 <= structural <= g:
        raise ValueError("g0 must satisfy 1 <= g0 <= g")
    n = len(profile)
    tasks = []
    for eb in range(max(0, structural - 1), n + 2 * structural - 2):
        vm = eb + 1 - structural
        vf = n + 2 * structural - 2 - eb
        if vf < 1 or vf > a or vm < 0:
            continue
        nint = vm + vf
        for flatpos in itertools.combinations(range(nint), vm):
            for comp in _compositions(a, vf):
                tasks.append((flatpos, comp, profile, structural, g))
    out = []
    for chunk in _run_tasks(_floor_task, tasks, workers):
        out.extend(chunk)
    out.sort(key=lambda d: (d.kinds, d.a, d.g, d.edges))
    return out


# --- pearl diagram enumeration -------------------------------------------------


def _pearl_candidates(kinds, norm):
    """DFS around the cycle, yielding sorted (origin, length, weight) tuples.

    Time t visits cycle position t mod len(kinds); edges start only in
    the first pass (at the time equal to their origin), so the length
    of an edge terminated at time t is t - origin.
    """
    npos = len(kinds)
    out = []

    def rec(t, opens, capacity, flat_need, edges):
        if t >= npos and not opens:
            if all(c == 0 for c in capacity) and not flat_need:
                out.append(tuple(sorted(edges)))
            return
        p = t % npos
        first_pass = t < npos
        choices = []
        if kinds[p] == "flat":
            if first_pass:
                # must start the outgoing edge now; the ingoing edge may
                # terminate now (equal weight) or in a later pass
                for key in sorted(opens):
                    wgt = key[1]
                    rest = opens.copy()
                    rest[key] -= 1
                    if not rest[key]:
                        del rest[key]
                    rest[(p, wgt)] += 1
                    choices.append(
                        (rest, None, edges + [(key[0], t - key[0], wgt)])
                    )
                max_w = capacity[p]
                for wgt in range(1, max_w + 1):
                    started = opens.copy()
                    started[(p, wgt)] += 1
                    choices.append((started, (p, wgt), edges))
            elif p in flat_need:
                wgt = flat_need[p]
                key_pool = sorted(k for k in opens if k[1] == wgt)
                for key in key_pool:
                    rest = opens.copy()
                    rest[key] -= 1
                    if not rest[key]:
                        del rest[key]
                    choices.append(
                        (rest, ("done", p), edges + [(key[0], t - key[0], wgt)])
                    )
                choices.append((opens.copy(), None, list(edges)))
            else:
                choices.append((opens.copy(), None, list(edges)))
        else:
            for tsub in _submultisets(opens):
                rest = opens.copy()
                new_edges = list(edges)
                for key, cnt in tsub.items():
                    rest[key] -= cnt
                    if not rest[key]:
                        del rest[key]
                    new_edges.extend([(key[0], t - key[0], key[1])] * cnt)
                if first_pass:
                    budget = capacity[p] - sum(
                        k[1] * c for k, c in rest.items()
                    )
                    for total in range(0, max(budget, 0) + 1):
                        for parts in _partitions(total):
                            started = rest.copy()
                            for wgt in parts:
                                started[(p, wgt)] += 1
                            choices.append((started, None, new_edges))
                else:
                    choices.append((rest, None, new_edges))
        for opens2, marker, edges2 in choices:
            need2 = dict(flat_need)
            if marker is not None:
                if marker[0] == "done":
                    del need2[marker[1]]
                else:
                    need2[marker[0]] = marker[1]
            crossing = sum(k[1] * c for k, c in opens2.items())
            if crossing > capacity[p]:
                continue
            cap2 = list(capacity)
            cap2[p] -= crossing
            if not opens2 and t + 1 >= npos:
                if all(c == 0 for c in cap2) and not need2:
                    out.append(tuple(sorted(edges2)))
                continue
            if not opens2 and not first_pass:
                continue
            rec(t + 1, opens2, cap2, need2, edges2)

    rec(0, Counter(), [norm] * npos, {}, [])
    return sorted(set(out))


def _pearl_task(args):
    (flatpos, comp, norm, structural, genus) = args
    vf = len(comp)
    npos = len(flatpos) + vf
    kinds = tuple(
        "flat" if p in set(flatpos) else "pearl" for p in range(npos)
    )
    pearl_positions = [p for p in range(npos) if kinds[p] == "pearl"]
    a_full = tuple(
        dict(zip(pearl_positions, comp)).get(p, 0) for p in range(npos)
    )
    results = []
    for edges in _pearl_candidates(kinds, norm):
        for gsplit in _weak_compositions(genus - structural, vf):
            g_full = [0] * npos
            for p, extra in zip(pearl_positions, gsplit):
                g_full[p] = 1 + extra
            cand = PearlDiagram(
                kinds=kinds,
                a=a_full,
                g=tuple(g_full),
                edges=edges,
                norm=norm,
                genus=genus,
            )
            try:
                validate_pearl(cand)
            except InvalidDiagramError:
                break
            results.append(cand)
    return results


def enumerate_pearl_diagrams(g, B, g0=None, workers=1):
    """All genus g pearl diagrams of degree B = (|B|, a), sorted.

    The cycle has g0 positions (g0 = g in point mode), one labeled
    marked vertex per position; lambda mode distributes the remaining
    genus g - g0 over the pearls.
    """
    norm, a = B
    if norm < 1 or a < 1:
        raise ValueError("diagram degree entries must be positive")
    structural = g if g0 is None else g0
    if structural < 2 or structural > g:
        raise ValueError("pearl diagrams require 2 <= g0 <= g")
    if g > MAX_GENUS or norm > MAX_PEARL_NORM or a > MAX_PEARL_DEGREE:
        raise BoundExceededError(
            f"(g={g}, B=({norm},{a})) beyond configured bounds"
        )
    tasks = []
    for eb in range(structural - 1, 2 * structural - 1):
        vm = 1 - structural + eb
        vf = 2 * structural - 1 - eb
        if vf < 1 or vf > a or vm < 0:
            continue
        npos = vm + vf
        for flatpos in itertools.combinations(range(npos), vm):
            for comp in _compositions(a, vf):
                tasks.append((flatpos, comp, norm, structural, g))
    out = []
    for chunk in _run_tasks(_pearl_task, tasks, workers):
        out.extend(chunk)
    out.sort(key=lambda d: (d.kinds, d.a, d.g, d.edges))
    return out


def _run_tasks(fn, tasks, workers):
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))


# --- multiplicities -----------------------------------------------------------


def _aut_order_formula(bounded):
    order = 1
    for count in Counter(bounded).values():
        order *= factorial(count)
    return order


def _aut_order_bruteforce(bounded):
    """|Aut| from the number of distinct orderings of the edge multiset."""
    if len(bounded) > 8:
        return _aut_order_formula(bounded)
    distinct = len(set(itertools.permutations(bounded)))
    return factorial(len(bounded)) // distinct


def _vertex_factor(d, p, mode, norm):
    nv = d.valence(p)
    power = 1 if mode == "points" else 2 * d.g[p] - 1
    term = refined_sigma(power, norm, d.a[p]).scale(
        Fraction(d.a[p] ** (nv - 1))
    )
    if mode == "lambda":
        term = term.scale(wg_polynomial(d.g[p], d.vertex_weights(p)))
    return term


def floor_multiplicity(d, mode="points", aut="unlabeled"):
    """Correlated multiplicity of a floor diagram as a group algebra element.

    m = prod' w_e^2 * prod_b w_e * prod_v a_v^(n_v - 1) sigma(a_v)
        * T_(norm / gcd), divided by the order of the automorphism group
    permuting parallel equal-weight bounded edges.  In lambda mode each
    floor contributes W_(g_v) and the (2 g_v - 1)-power divisor sum.
    """
    if mode not in ("points", "lambda"):
        raise ValueError("mode must be 'points' or 'lambda'")
    validate_floor(d)
    norm = d.norm
    ell = d.gcd_all()
    scalar = Fraction(1)
    for (_, _, wgt) in d.eprime_edges():
        scalar *= wgt * wgt
    bounded = d.bounded_edges()
    for (_, _, wgt) in bounded:
        scalar *= wgt
    if aut == "unlabeled":
        scalar /= _aut_order_formula(bounded)
    elif aut == "labeled":
        scalar /= _aut_order_bruteforce(bounded)
    else:
        raise ValueError("aut must be 'unlabeled' or 'labeled'")
    result = torsion_average(norm // ell).scale(scalar)
    for p in d.floors():
        result = result * _vertex_factor(d, p, mode, norm)
    return result


def pearl_multiplicity(d, mode="points", aut="unlabeled"):
    """Correlated multiplicity of a pearl diagram.

    m = |B|^2 prod' w_e^2 * prod w_e * prod_v a_v^(n_v - 1) sigma(a_v)
        * T_(|B| / gcd), with the same automorphism and lambda
    conventions as floor_multiplicity.
    """
    if mode not in ("points", "lambda"):
        raise ValueError("mode must be 'points' or 'lambda'")
    validate_pearl(d)
    norm = d.norm
    ell = d.gcd_all()
    scalar = Fraction(norm * norm)
    for (_, _, wgt) in d.eprime_edges():
        scalar *= wgt * wgt
    for (_, _, wgt) in d.edges:
        scalar *= wgt
    if aut == "unlabeled":
        scalar /= _aut_order_formula(d.edges)
    elif aut == "labeled":
        scalar /= _aut_order_bruteforce(d.edges)
    else:
        raise ValueError("aut must be 'unlabeled' or 'labeled'")
    result = torsion_average(norm // ell).scale(scalar)
    for p in d.pearls():
        result = result * _vertex_factor(d, p, mode, norm)
    return result


# --- serialization -------------------------------------------------------------


def diagram_to_json(d):
    """JSON-ready dict for a floor or pearl diagram."""
    if isinstance(d, FloorDiagram):
        k = d.n_interior
        vertices = []
        for p, kind in enumerate(d.kinds):
            vertices.append(
                {
                    "kind": kind,
                    "a": d.a[p],
                    "g": d.g[p],
                    "pos": p if p < k else -1,
                }
            )
        return {
            "vertices": vertices,
            "edges": [list(e) for e in d.edges],
            "degree": [list(d.profile), sum(d.a)],
            "genus": d.genus,
        }
    vertices = [
        {"kind": kind, "a": d.a[p], "g": d.g[p], "pos": p}
        for p, kind in enumerate(d.kinds)
    ]
    return {
        "vertices": vertices,
        "edges": [[e[0], d.head(e), e[2]] for e in d.edges],
        "windings": [e[1] for e in d.edges],
        "degree": [d.norm, sum(d.a)],
        "genus": d.genus,
    }
