"""Finite directed multigraphs with optional edge labels.

Unlabeled graphs present edge shifts; labeled graphs (finite automata)
present sofic shifts.  Factor-language acceptors use "all states initial,
all states accepting" semantics: on an essential presentation the accepted
language is exactly the factor language of the presented shift, so language
equality of the determinized acceptors decides equality of the shifts.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .core import Alphabet, Word
from .errors import AlphabetMismatchError, FormatError, UnlabeledError

Edge = tuple[int, int, int | None]  # (source state, target state, label index)

_DEAD = -1


@dataclass(frozen=True)
class LabeledGraph:
    """Directed multigraph over named states.

    Either every edge is labeled (with an index into ``alphabet``) or none
    is.  ``flagged`` carries caller-defined marks on state names; trimming
    operations preserve the marks of surviving states (the product
    construction flags its diagonal states this way).
    """

    states: tuple[str, ...]
    edges: tuple[Edge, ...]
    alphabet: Alphabet | None = None
    flagged: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "flagged", frozenset(self.flagged))
        if len(set(self.states)) != len(self.states):
            raise ValueError("duplicate state names")
        n = len(self.states)
        labels = set()
        for src, dst, lab in self.edges:
            if not (0 <= src < n and 0 <= dst < n):
                raise ValueError("edge endpoint out of range")
            labels.add(lab is None)
        if len(labels) > 1:
            raise ValueError("either all edges are labeled or none")
        if labels == {False}:
            if self.alphabet is None:
                raise ValueError("labeled edges require an alphabet")
            k = self.alphabet.size
            if any(not (0 <= lab < k) for _, _, lab in self.edges):
                raise ValueError("edge label out of alphabet range")
        if not self.flagged <= set(self.states):
            raise ValueError("flagged names must be state names")

    @property
    def is_labeled(self) -> bool:
        return self.alphabet is not None and all(lab is not None for _, _, lab in self.edges)

    def state_index(self, name: str) -> int:
        return self.states.index(name)


@dataclass(frozen=True)
class SccComponent:
    states: tuple[int, ...]
    trivial: bool


@dataclass(frozen=True)
class Dfa:
    """Deterministic factor-language acceptor: every state accepts.

    ``transitions[q][a]`` is the successor state or -1 when undefined; a word
    is accepted iff its run from ``initial`` stays defined.  ``initial`` is
    None only for the acceptor of an empty presentation, which accepts just
    the empty word.
    """

    alphabet: Alphabet
    transitions: tuple[tuple[int, ...], ...]
    initial: int | None

    @property
    def n_states(self) -> int:
        return len(self.transitions)

    def run(self, indices: Iterable[int]) -> int | None:
        q = self.initial
        for a in indices:
            if q is None:
                return None
            nxt = self.transitions[q][a]
            q = nxt if nxt != _DEAD else None
        return q

    def accepts(self, word: Word) -> bool:
        if word.alphabet != self.alphabet:
            raise AlphabetMismatchError("word over a different alphabet")
        if len(word) == 0:
            return True
        return self.run(word.indices) is not None


def essential_form(g: LabeledGraph) -> LabeledGraph:
    """Maximal subgraph in which every state has an incoming and an outgoing
    edge.  Removing stranded states step by step leaves the bi-infinite paths
    unchanged; the result is empty iff the graph has no cycle."""
    keep = set(range(len(g.states)))
    while True:
        out_deg = dict.fromkeys(keep, 0)
        in_deg = dict.fromkeys(keep, 0)
        for src, dst, _ in g.edges:
            if src in keep and dst in keep:
                out_deg[src] += 1
                in_deg[dst] += 1
        stranded = {i for i in keep if out_deg[i] == 0 or in_deg[i] == 0}
        if not stranded:
            break
        keep -= stranded
    order = sorted(keep)
    remap = {old: new for new, old in enumerate(order)}
    states = tuple(g.states[i] for i in order)
    edges = tuple(
        (remap[s], remap[d], lab) for s, d, lab in g.edges if s in keep and d in keep
    )
    return LabeledGraph(states, edges, g.alphabet, g.flagged & set(states))


def scc_decomposition(g: LabeledGraph) -> tuple[SccComponent, ...]:
    """Strongly connected components (Tarjan, single pass, iterative).

    Singleton components without a self-loop are marked trivial.
    """
    n = len(g.states)
    adj = [[] for _ in range(n)]
    self_loop = [False] * n
    for src, dst, _ in g.edges:
        adj[src].append(dst)
        if src == dst:
            self_loop[src] = True

    index: list[int | None] = [None] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    components: list[SccComponent] = []
    counter = 0

    for root in range(n):
        if index[root] is not None:
            continue
        work = [(root, 0)]
        while work:
            v, child_pos = work.pop()
            if child_pos == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            descended = False
            for i in range(child_pos, len(adj[v])):
                u = adj[v][i]
                if index[u] is None:
                    work.append((v, i + 1))
                    work.append((u, 0))
                    descended = True
                    break
                if on_stack[u]:
                    low[v] = min(low[v], index[u])
            if descended:
                continue
            if low[v] == index[v]:
                members = []
                while True:
                    u = stack.pop()
                    on_stack[u] = False
                    members.append(u)
                    if u == v:
                        break
                members.sort()
                trivial = len(members) == 1 and not self_loop[members[0]]
                components.append(SccComponent(tuple(members), trivial))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return tuple(components)


def has_biinfinite_path(g: LabeledGraph) -> bool:
    """True iff the graph contains a directed cycle."""
    return len(essential_form(g).states) > 0


def _require_labeled(g: LabeledGraph) -> None:
    if not g.is_labeled:
        raise UnlabeledError("operation requires a labeled presentation")


def determinize_factor_acceptor(a: LabeledGraph) -> Dfa:
    """Subset construction with every state initial.

    The accepted language is the set of label words of finite paths in ``a``;
    on an essential presentation this is the factor language of the presented
    shift.  Only reachable subsets are materialized and the empty subset is
    discarded (it becomes the implicit dead state).
    """
    _require_labeled(a)
    k = a.alphabet.size
    step: list[list[set[int]]] = [[set() for _ in range(k)] for _ in a.states]
    for src, dst, lab in a.edges:
        step[src][lab].add(dst)

    initial = frozenset(range(len(a.states)))
    if not initial:
        return Dfa(a.alphabet, (), None)
    ids: dict[frozenset[int], int] = {initial: 0}
    order = [initial]
    queue = deque([initial])
    rows: list[list[int]] = []
    while queue:
        subset = queue.popleft()
        row = []
        for sym in range(k):
            target = set()
            for q in subset:
                target |= step[q][sym]
            if not target:
                row.append(_DEAD)
                continue
            target = frozenset(target)
            if target not in ids:
                ids[target] = len(order)
                order.append(target)
                queue.append(target)
            row.append(ids[target])
        rows.append(row)
    return Dfa(a.alphabet, tuple(tuple(r) for r in rows), 0)


def _shortest_divergence(
    d1: Dfa, d2: Dfa, want_side1: bool, want_side2: bool
) -> Word | None:
    """BFS over the pair automaton with dead-state completion.

    Returns the shortest word on which exactly one automaton stays alive,
    restricted to the requested side(s): side 1 means accepted by ``d1``
    only.  Branches that diverge on an unrequested side are pruned (a dead
    side never revives).
    """
    if d1.alphabet != d2.alphabet:
        raise AlphabetMismatchError("acceptors over different alphabets")
    k = d1.alphabet.size
    start = (
        d1.initial if d1.initial is not None else _DEAD,
        d2.initial if d2.initial is not None else _DEAD,
    )
    if start == (_DEAD, _DEAD):
        return None
    parents: dict[tuple[int, int], tuple[tuple[int, int], int] | None] = {start: None}
    queue = deque([start])

    def rebuild(node: tuple[int, int], last: int) -> Word:
        out = [last]
        while parents[node] is not None:
            node, sym = parents[node]
            out.append(sym)
        return Word(d1.alphabet, tuple(reversed(out)))

    while queue:
        node = queue.popleft()
        q1, q2 = node
        for sym in range(k):
            r1 = d1.transitions[q1][sym] if q1 != _DEAD else _DEAD
            r2 = d2.transitions[q2][sym] if q2 != _DEAD else _DEAD
            if r1 == _DEAD and r2 == _DEAD:
                continue
            if r1 == _DEAD or r2 == _DEAD:
                side1 = r2 == _DEAD
                if (side1 and want_side1) or (not side1 and want_side2):
                    return rebuild(node, sym)
                continue
            child = (r1, r2)
            if child not in parents:
                parents[child] = (node, sym)
                queue.append(child)
    return None


def dfa_language_equal(d1: Dfa, d2: Dfa) -> tuple[bool, Word | None]:
    """Decide factor-language equality.

    Returns (True, None) or (False, w) with w a shortest word in the
    symmetric difference of the two languages.
    """
    witness = _shortest_divergence(d1, d2, True, True)
    return (witness is None, witness)


def dfa_language_subset(d1: Dfa, d2: Dfa) -> tuple[bool, Word | None]:
    """Decide language containment L(d1) <= L(d2); the witness, if any, is a
    shortest word accepted by d1 but not d2."""
    witness = _shortest_divergence(d1, d2, True, False)
    return (witness is None, witness)


def product_automaton(a: LabeledGraph) -> LabeledGraph:
    """Pair automaton synchronizing equal labels.

    States are all ordered pairs of states of ``a``; there is an edge
    (p,q) -> (r,s) labeled x whenever ``a`` has edges p -> r and q -> s both
    labeled x.  Diagonal states (p,p) are flagged: a bi-infinite path through
    a surviving non-diagonal state is a pair of distinct equally-labeled
    bi-infinite paths of ``a``.
    """
    _require_labeled(a)
    n = len(a.states)
    names = tuple(f"({p},{q})" for p in a.states for q in a.states)
    by_label: dict[int, list[tuple[int, int]]] = {}
    for src, dst, lab in a.edges:
        by_label.setdefault(lab, []).append((src, dst))
    edges = []
    for lab, moves in by_label.items():
        for p, r in moves:
            for q, s in moves:
                edges.append((p * n + q, r * n + s, lab))
    diagonal = frozenset(f"({p},{p})" for p in a.states)
    return LabeledGraph(names, tuple(edges), a.alphabet, diagonal)


def parse_presentation(text: str) -> LabeledGraph:
    """Parse the .pres interchange format: a JSON document with fields
    ``states`` (state names), ``edges`` (records {from, to, label?}) and
    ``alphabet`` (symbol tokens, required when any edge is labeled)."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(e.msg, e.lineno) from None
    if not isinstance(data, dict):
        raise FormatError("presentation document must be an object")
    try:
        states = tuple(data["states"])
    except KeyError:
        raise FormatError("missing field: states") from None
    if not all(isinstance(s, str) for s in states):
        raise FormatError("state names must be strings")
    alphabet = None
    if data.get("alphabet") is not None:
        try:
            alphabet = Alphabet(tuple(data["alphabet"]))
        except ValueError as e:
            raise FormatError(str(e)) from None
    index = {s: i for i, s in enumerate(states)}
    edges = []
    for rec in data.get("edges", []):
        if not isinstance(rec, dict) or "from" not in rec or "to" not in rec:
            raise FormatError(f"bad edge record {rec!r}")
        for endpoint in (rec["from"], rec["to"]):
            if endpoint not in index:
                raise FormatError(f"edge endpoint {endpoint!r} is not a state")
        label = None
        if rec.get("label") is not None:
            if alphabet is None:
                raise FormatError("labeled edge requires an alphabet field")
            label = alphabet.index(rec["label"])
        edges.append((index[rec["from"]], index[rec["to"]], label))
    try:
        return LabeledGraph(states, tuple(edges), alphabet)
    except ValueError as e:
        raise FormatError(str(e)) from None


def format_presentation(g: LabeledGraph) -> str:
    doc: dict = {"states": list(g.states)}
    if g.alphabet is not None:
        doc["alphabet"] = list(g.alphabet.symbols)
    recs = []
    for src, dst, lab in g.edges:
        rec = {"from": g.states[src], "to": g.states[dst]}
        if lab is not None:
            rec["label"] = g.alphabet.symbols[lab]
        recs.append(rec)
    doc["edges"] = recs
    return json.dumps(doc, indent=2) + "\n"


def load_presentation(path: str | Path) -> LabeledGraph:
    try:
        return parse_presentation(Path(path).read_text())
    except FormatError as e:
        raise FormatError(e.message, e.line, str(path)) from None


def save_presentation(g: LabeledGraph, path: str | Path) -> None:
    Path(path).write_text(format_presentation(g))
