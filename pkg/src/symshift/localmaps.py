"""Local rules (sliding block codes) and their decision procedures.

A rule is an extensional table from allowed windows of length 2*radius+1 to
output symbols.  All decisions run on one labeled graph: the higher-block
presentation of the domain at order 2*M', M' = max(radius, ceil(memory/2)),
relabeled so that each edge carries the output of the rule on its merged
window.  Bi-infinite paths of that graph are the domain configurations and
their label sequences are the images, so the graph presents the image shift:

  - surjectivity onto a target reduces to factor-language containment both
    ways between the image presentation and the target presentation;
  - injectivity fails iff the essential pair automaton of the image
    presentation keeps a non-diagonal state;
  - pre-injectivity fails iff some non-diagonal pair state lies on a finite
    excursion that starts and ends on the diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import Callable, Iterable, Iterator

from .core import (
    PeriodicConfig,
    SftSpec,
    Word,
    enumerate_locally_allowed,
    normalize_periodic,
    periodization_allowed,
)
from .errors import (
    AlphabetMismatchError,
    DensityUnknownError,
    EmptyShiftError,
    FormatError,
    NotASelfmapError,
    NotInDomainError,
    RuleConflictError,
    RuleIncompleteError,
)
from .graphs import (
    Dfa,
    LabeledGraph,
    determinize_factor_acceptor,
    dfa_language_subset,
    essential_form,
    product_automaton,
)
from .shifts import factor_acceptor, periodic_density


@dataclass(frozen=True, eq=False)
class LocalRule:
    """A radius-M local map table over the allowed windows of its domain.

    The table must cover every locally allowed window of length 2M+1;
    entries on windows containing forbidden factors are dropped silently,
    so one rule file can serve several domain specs.
    """

    domain: SftSpec
    radius: int
    table: dict[tuple[int, ...], int]
    name: str = ""

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("radius must be non-negative")
        width = 2 * self.radius + 1
        size = self.domain.alphabet.size
        kept = {}
        for window, out in self.table.items():
            window = tuple(window)
            if len(window) != width:
                raise ValueError(f"window {window} does not have length {width}")
            if not (0 <= out < size) or any(not (0 <= a < size) for a in window):
                raise ValueError("symbol index out of alphabet range")
            kept[window] = out
        allowed = [w.indices for w in enumerate_locally_allowed(self.domain, width)]
        for window in allowed:
            if window not in kept:
                text = Word(self.domain.alphabet, window).text()
                raise RuleIncompleteError(f"rule has no entry for allowed window {text!r}")
        object.__setattr__(self, "table", {w: kept[w] for w in allowed})

    @property
    def window_length(self) -> int:
        return 2 * self.radius + 1


@dataclass(frozen=True)
class ImagePresentation:
    """Labeled higher-block graph of the domain whose edge labels are the
    rule outputs; after essential trimming it presents the image shift."""

    rule: LocalRule
    half_order: int
    graph: LabeledGraph


def common_half_order(rule: LocalRule) -> int:
    """The normalization parameter M' absorbing both the domain memory and
    the rule radius into one block length 2*M'."""
    return max(rule.radius, (rule.domain.memory + 1) // 2)


def build_image_presentation(rule: LocalRule) -> ImagePresentation:
    spec = rule.domain
    half = common_half_order(rule)
    order = 2 * half
    states = list(enumerate_locally_allowed(spec, order))
    index = {w.indices: i for i, w in enumerate(states)}
    lo = half - rule.radius
    hi = half + rule.radius + 1
    edges = []
    for merged in enumerate_locally_allowed(spec, order + 1):
        idx = merged.indices
        edges.append((index[idx[:-1]], index[idx[1:]], rule.table[idx[lo:hi]]))
    graph = LabeledGraph(
        tuple(w.text() for w in states), tuple(edges), spec.alphabet
    )
    if not essential_form(graph).states:
        raise EmptyShiftError("the domain shift is empty")
    return ImagePresentation(rule, half, graph)


def apply_to_periodic(rule: LocalRule, config: PeriodicConfig) -> PeriodicConfig:
    """Image of a periodic configuration, computed cyclically over one period
    and renormalized; the image's least period divides the input's."""
    if config.alphabet != rule.domain.alphabet:
        raise AlphabetMismatchError("configuration over a different alphabet")
    if not periodization_allowed(rule.domain, config.primitive):
        raise NotInDomainError("configuration is not in the domain shift")
    r = rule.radius
    n = config.least_period
    image = tuple(
        rule.table[tuple(config.value_at(z + d) for d in range(-r, r + 1))]
        for z in range(n)
    )
    return normalize_periodic(Word(config.alphabet, image))


def _image_acceptor(rule: LocalRule) -> Dfa:
    return determinize_factor_acceptor(
        essential_form(build_image_presentation(rule).graph)
    )


def _surjectivity_witness(rule: LocalRule, target: SftSpec | None) -> Word | None:
    """None when the rule maps onto the target; otherwise a shortest orphan
    word of the target.  Raises when the image is not inside the target."""
    if target is None:
        target = rule.domain
    if target.alphabet != rule.domain.alphabet:
        raise AlphabetMismatchError("target over a different alphabet")
    image = _image_acceptor(rule)
    goal = factor_acceptor(target)
    contained, stray = dfa_language_subset(image, goal)
    if not contained:
        raise NotASelfmapError(
            f"image word {stray.text()!r} lies outside the target language"
        )
    onto, orphan = dfa_language_subset(goal, image)
    return None if onto else orphan


def is_surjective(rule: LocalRule, target: SftSpec | None = None) -> tuple[bool, Word | None]:
    """Decide whether the rule maps its domain onto the target shift
    (default: the domain itself).

    Returns (True, None) or (False, w) with w a shortest target word without
    preimage, i.e. a Garden-of-Eden witness.
    """
    orphan = _surjectivity_witness(rule, target)
    return (orphan is None, orphan)


def find_goe_pattern(rule: LocalRule, target: SftSpec | None = None) -> Word | None:
    """Shortest orphan pattern of the target, or None when the rule is
    surjective (no pattern lacks a preimage)."""
    return _surjectivity_witness(rule, target)


def is_injective(rule: LocalRule) -> bool:
    """Two distinct configurations share an image iff the essential pair
    automaton keeps a non-diagonal state."""
    graph = essential_form(build_image_presentation(rule).graph)
    trimmed = essential_form(product_automaton(graph))
    return set(trimmed.states) <= trimmed.flagged


def is_preinjective(rule: LocalRule) -> bool:
    """Injectivity on pairs of configurations differing in finitely many
    positions.

    Fails iff, in the pair automaton of the essential image presentation,
    some non-diagonal state is reachable from the diagonal and co-reachable
    back to it: such an excursion extends along the diagonal to a pair of
    distinct equally-labeled configurations equal outside a finite window.
    """
    graph = essential_form(build_image_presentation(rule).graph)
    pairs = product_automaton(graph)
    n = len(pairs.states)
    forward = [[] for _ in range(n)]
    backward = [[] for _ in range(n)]
    for src, dst, _ in pairs.edges:
        forward[src].append(dst)
        backward[dst].append(src)
    diagonal = {i for i, name in enumerate(pairs.states) if name in pairs.flagged}

    def reach(adjacent, seeds):
        seen = set()
        frontier = list(seeds)
        while frontier:
            nxt = []
            for q in frontier:
                for r in adjacent[q]:
                    if r not in seen:
                        seen.add(r)
                        nxt.append(r)
            frontier = nxt
        return seen

    from_diagonal = reach(forward, diagonal)
    to_diagonal = reach(backward, diagonal)
    offenders = (from_diagonal & to_diagonal) - diagonal
    return not offenders


@dataclass(frozen=True)
class AuditEntry:
    name: str
    selfmap: bool
    injective: bool | None
    surjective: bool | None
    preinjective: bool | None = None

    @property
    def violation(self) -> bool:
        return bool(self.selfmap and self.injective and not self.surjective)


@dataclass(frozen=True)
class AuditReport:
    entries: tuple[AuditEntry, ...]

    @property
    def violations(self) -> tuple[AuditEntry, ...]:
        return tuple(e for e in self.entries if e.violation)


def surjunctivity_audit(
    rules: Iterable[LocalRule], domain: SftSpec, check_preinjective: bool = False
) -> AuditReport:
    """Run the injective-implies-surjective audit over a rule family.

    Rules whose image leaves the domain shift are recorded as non-selfmaps
    and get no verdicts.  A violation entry would witness a bug in the
    decision procedures, not a mathematical possibility.
    """
    if not periodic_density(domain):
        raise DensityUnknownError(
            "the audit requires a domain with dense periodic configurations"
        )
    goal = factor_acceptor(domain)
    entries = []
    for i, rule in enumerate(rules):
        if rule.domain != domain:
            raise ValueError("audit rules must share the audited domain")
        name = rule.name or f"rule{i}"
        image = _image_acceptor(rule)
        contained, _ = dfa_language_subset(image, goal)
        if not contained:
            entries.append(AuditEntry(name, False, None, None))
            continue
        onto, _ = dfa_language_subset(goal, image)
        entry = AuditEntry(
            name,
            True,
            is_injective(rule),
            onto,
            is_preinjective(rule) if check_preinjective else None,
        )
        entries.append(entry)
    return AuditReport(tuple(entries))


def rule_from_function(
    domain: SftSpec, radius: int, fn: Callable[[tuple[int, ...]], int], name: str = ""
) -> LocalRule:
    table = {
        w.indices: fn(w.indices)
        for w in enumerate_locally_allowed(domain, 2 * radius + 1)
    }
    return LocalRule(domain, radius, table, name)


def identity_rule(domain: SftSpec, radius: int = 1) -> LocalRule:
    return rule_from_function(domain, radius, lambda win: win[radius], "identity")


def shift_rule(domain: SftSpec, radius: int = 1) -> LocalRule:
    return rule_from_function(domain, radius, lambda win: win[-1], "shift")


def constant_rule(domain: SftSpec, symbol: int, radius: int = 1) -> LocalRule:
    name = f"constant-{domain.alphabet.symbols[symbol]}"
    return rule_from_function(domain, radius, lambda win: symbol, name)


def xor_rule(domain: SftSpec, radius: int = 1) -> LocalRule:
    if domain.alphabet.size != 2:
        raise ValueError("xor rule needs a binary alphabet")
    return rule_from_function(domain, radius, lambda win: (win[0] + win[-1]) % 2, "xor")


def and_rule(domain: SftSpec, radius: int = 1) -> LocalRule:
    if domain.alphabet.size != 2:
        raise ValueError("and rule needs a binary alphabet")
    return rule_from_function(domain, radius, lambda win: int(all(win)), "and")


def rule_count(domain: SftSpec, radius: int) -> int:
    windows = sum(1 for _ in enumerate_locally_allowed(domain, 2 * radius + 1))
    return domain.alphabet.size**windows


def enumerate_rules(domain: SftSpec, radius: int) -> Iterator[LocalRule]:
    """All total rules of the given radius, in lexicographic table order."""
    windows = [w.indices for w in enumerate_locally_allowed(domain, 2 * radius + 1)]
    size = domain.alphabet.size
    for i, outputs in enumerate(product(range(size), repeat=len(windows))):
        yield LocalRule(domain, radius, dict(zip(windows, outputs)), f"rule{i}")


def compose_rules(outer: LocalRule, inner: LocalRule) -> LocalRule:
    """Table of outer applied after inner, at radius r_outer + r_inner.

    Windows that never occur in a configuration may feed outer a window
    outside its table; those entries default to symbol 0 and are irrelevant
    on actual configurations.
    """
    if outer.domain != inner.domain:
        raise AlphabetMismatchError("composition needs a shared domain")
    domain = inner.domain
    radius = outer.radius + inner.radius
    mid_width = 2 * inner.radius + 1
    table = {}
    for win in enumerate_locally_allowed(domain, 2 * radius + 1):
        idx = win.indices
        mid = tuple(
            inner.table[idx[i : i + mid_width]] for i in range(2 * outer.radius + 1)
        )
        table[idx] = outer.table.get(mid, 0)
    name = f"{outer.name or 'outer'}-after-{inner.name or 'inner'}"
    return LocalRule(domain, radius, table, name)


def parse_rule(text: str, domain: SftSpec) -> LocalRule:
    """Parse the .rule format against a domain spec.

    Line-oriented; '#' starts a comment.  One ``radius:`` line, then one
    ``map: <tok> ... <tok> -> <tok>`` line per window.  Totality over the
    allowed windows is validated; duplicate windows with conflicting outputs
    are rejected.
    """
    radius: int | None = None
    entries: dict[tuple[int, ...], int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("radius:"):
            if radius is not None:
                raise FormatError("duplicate radius declaration", lineno)
            value = line[len("radius:"):].strip()
            if not value.isdigit():
                raise FormatError(f"radius must be a natural number, got {value!r}", lineno)
            radius = int(value)
        elif line.startswith("map:"):
            if radius is None:
                raise FormatError("map line before radius declaration", lineno)
            body = line[len("map:"):]
            if "->" not in body:
                raise FormatError("map line needs '->'", lineno)
            left, _, right = body.partition("->")
            window_tokens = left.split()
            out_tokens = right.split()
            if len(window_tokens) != 2 * radius + 1:
                raise FormatError(
                    f"window needs {2 * radius + 1} tokens, got {len(window_tokens)}",
                    lineno,
                )
            if len(out_tokens) != 1:
                raise FormatError("map line needs exactly one output token", lineno)
            try:
                window = tuple(domain.alphabet.index(t) for t in window_tokens)
                out = domain.alphabet.index(out_tokens[0])
            except FormatError as e:
                raise FormatError(str(e), lineno) from None
            if window in entries and entries[window] != out:
                raise RuleConflictError(
                    f"line {lineno}: conflicting outputs for window "
                    f"{' '.join(window_tokens)}"
                )
            entries[window] = out
        else:
            raise FormatError(f"unrecognized line {line!r}", lineno)
    if radius is None:
        raise FormatError("missing radius declaration")
    return LocalRule(domain, radius, entries)


def load_rule(path: str | Path, domain: SftSpec) -> LocalRule:
    try:
        return parse_rule(Path(path).read_text(), domain)
    except FormatError as e:
        raise FormatError(e.message, e.line, str(path)) from None
    except (RuleConflictError, RuleIncompleteError) as e:
        raise type(e)(f"{path}: {e}") from None
