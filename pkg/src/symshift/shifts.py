"""Constructions and decision procedures on shift spaces over Z.

Every procedure runs on the essential higher-block presentation: its states
are allowed words, its edges single-letter extensions, and its bi-infinite
paths correspond exactly to the configurations of the shift.  Membership and
emptiness therefore see the true language (factors of configurations), which
is strictly smaller than the set of words merely avoiding forbidden factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .core import (
    PeriodicCensus,
    PeriodicConfig,
    SftSpec,
    Word,
    enumerate_locally_allowed,
    normalize_periodic,
    periodization_allowed,
)
from .errors import (
    AlphabetMismatchError,
    BadLengthError,
    EmptyShiftError,
    OrderTooSmallError,
    OverlapTooShortError,
    UnlabeledError,
)
from .graphs import (
    Dfa,
    LabeledGraph,
    determinize_factor_acceptor,
    dfa_language_equal,
    essential_form,
    scc_decomposition,
)


@dataclass(frozen=True)
class HigherBlockGraph:
    """Edge-shift recoding of an SFT at a given block order.

    States are the locally allowed words of length ``order``; there is an
    edge u -> v when u and v overlap in order-1 symbols and the merged word
    is locally allowed, labeled by the first letter of u.  The labels realize
    the recoding conjugacy, so the graph is a presentation of the original
    shift.
    """

    base: SftSpec
    order: int
    graph: LabeledGraph


def build_higher_block(spec: SftSpec, order: int) -> HigherBlockGraph:
    if order < spec.memory:
        raise OrderTooSmallError(
            f"block order {order} is below the memory {spec.memory}"
        )
    states = list(enumerate_locally_allowed(spec, order))
    index = {w.indices: i for i, w in enumerate(states)}
    edges = []
    for merged in enumerate_locally_allowed(spec, order + 1):
        idx = merged.indices
        edges.append((index[idx[:-1]], index[idx[1:]], idx[0]))
    graph = LabeledGraph(
        tuple(w.text() for w in states), tuple(edges), spec.alphabet
    )
    return HigherBlockGraph(spec, order, graph)


def presentation(spec: SftSpec, order: int | None = None) -> LabeledGraph:
    """Essential labeled presentation of the shift at the given order."""
    if order is None:
        order = spec.memory
    return essential_form(build_higher_block(spec, order).graph)


def is_empty(spec: SftSpec) -> bool:
    """Tiling problem over Z: the shift is empty iff its graph has no cycle."""
    return len(presentation(spec).states) == 0


def language_member(spec: SftSpec, word: Word) -> bool:
    """Extension problem over Z: does the word occur in some configuration?

    Runs the word through the essential presentation as a nondeterministic
    acceptor started in all states.  The empty word is a member iff the
    shift is non-empty.
    """
    if word.alphabet != spec.alphabet:
        raise AlphabetMismatchError("word over a different alphabet")
    graph = presentation(spec)
    step: dict[tuple[int, int], set[int]] = {}
    for src, dst, lab in graph.edges:
        step.setdefault((src, lab), set()).add(dst)
    current = set(range(len(graph.states)))
    for a in word.indices:
        nxt: set[int] = set()
        for q in current:
            nxt |= step.get((q, a), set())
        if not nxt:
            return False
        current = nxt
    return bool(current)


def _nonempty_presentation(spec: SftSpec) -> LabeledGraph:
    graph = presentation(spec)
    if not graph.states:
        raise EmptyShiftError("the shift is empty")
    return graph


def is_irreducible(spec: SftSpec) -> bool:
    """True iff the essential presentation is strongly connected."""
    return len(scc_decomposition(_nonempty_presentation(spec))) == 1


def is_mixing(spec: SftSpec) -> bool:
    """Strong connectivity plus cycle-length gcd 1.

    The gcd is computed from a breadth-first level function: every edge
    contributes |level(u) + 1 - level(v)|, and the gcd of the contributions
    equals the gcd of all cycle lengths.
    """
    graph = _nonempty_presentation(spec)
    if len(scc_decomposition(graph)) != 1:
        return False
    n = len(graph.states)
    adj = [[] for _ in range(n)]
    for src, dst, _ in graph.edges:
        adj[src].append(dst)
    level = [-1] * n
    level[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for q in frontier:
            for r in adj[q]:
                if level[r] < 0:
                    level[r] = level[q] + 1
                    nxt.append(r)
        frontier = nxt
    g = 0
    for src, dst, _ in graph.edges:
        g = gcd(g, abs(level[src] + 1 - level[dst]))
    return g == 1


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def periodic_census(spec: SftSpec, max_n: int, order: int | None = None) -> PeriodicCensus:
    """Count periodic configurations: p[n] with period dividing n+1, q[n]
    with exact period n+1.

    p_n is the number of closed paths of length n in the essential
    presentation (the trace of the n-th adjacency power, in exact integer
    arithmetic); q_n follows by the divisor recursion q_n = p_n - sum of
    q_d over proper divisors d of n.  Computing at a higher block ``order``
    must give the same numbers: they are conjugacy invariants.
    """
    if max_n < 1:
        raise BadLengthError("census needs max_n >= 1")
    graph = presentation(spec, order)
    n = len(graph.states)
    adjacency = [[0] * n for _ in range(n)]
    for src, dst, _ in graph.edges:
        adjacency[src][dst] += 1
    p: list[int] = []
    power = adjacency
    for _ in range(max_n):
        p.append(sum(power[i][i] for i in range(n)))
        power = [
            [sum(power[i][k] * adjacency[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]
    q: list[int] = []
    for m in range(1, max_n + 1):
        q.append(p[m - 1] - sum(q[d - 1] for d in _divisors(m)[:-1]))
    return PeriodicCensus(max_n, tuple(p), tuple(q))


def enumerate_periodic(spec: SftSpec, n: int) -> list[PeriodicConfig]:
    """All configurations with period dividing n, in canonical primitive form,
    ordered by their length-n repeating word."""
    if n < 1:
        raise BadLengthError("period bound must be >= 1")
    out = []
    for word in enumerate_locally_allowed(spec, n):
        if periodization_allowed(spec, word):
            out.append(normalize_periodic(word))
    return out


def periodic_density(spec: SftSpec) -> bool:
    """Density of periodic configurations, decided on the essential
    presentation: no edge may connect two different strongly connected
    components."""
    graph = _nonempty_presentation(spec)
    component_of = {}
    for ci, comp in enumerate(scc_decomposition(graph)):
        for s in comp.states:
            component_of[s] = ci
    return all(component_of[src] == component_of[dst] for src, dst, _ in graph.edges)


def sofic_equal(a1: LabeledGraph, a2: LabeledGraph) -> tuple[bool, Word | None]:
    """Decide whether two presentations accept the same sofic shift.

    Both are trimmed to essential form and determinized as factor-language
    acceptors; shift equality is exactly factor-language equality.  On
    inequality the witness word lies in exactly one factor language.
    """
    if not a1.is_labeled or not a2.is_labeled:
        raise UnlabeledError("sofic equality needs labeled presentations")
    if a1.alphabet != a2.alphabet:
        raise AlphabetMismatchError("presentations over different alphabets")
    d1 = determinize_factor_acceptor(essential_form(a1))
    d2 = determinize_factor_acceptor(essential_form(a2))
    return dfa_language_equal(d1, d2)


def factor_acceptor(spec: SftSpec, order: int | None = None) -> Dfa:
    """Deterministic acceptor of the factor language of the shift."""
    return determinize_factor_acceptor(presentation(spec, order))


def pasting_check(spec: SftSpec, u: Word, v: Word, w: Word) -> bool:
    """Membership of the pasted word uvw.

    When uv and vw are both in the language and the overlap v has length at
    least the memory, the result must be True; the check is exposed so the
    gluing property is directly testable.
    """
    for part in (u, v, w):
        if part.alphabet != spec.alphabet:
            raise AlphabetMismatchError("word over a different alphabet")
    if len(v) < spec.memory:
        raise OverlapTooShortError(
            f"overlap length {len(v)} is below the memory {spec.memory}"
        )
    return language_member(spec, u + v + w)


def words_of_language(spec: SftSpec, max_len: int) -> list[Word]:
    """All language words of length at most max_len (desk-scale helper)."""
    out: list[Word] = []
    for n in range(max_len + 1):
        for word in enumerate_locally_allowed(spec, n):
            if language_member(spec, word):
                out.append(word)
    return out
