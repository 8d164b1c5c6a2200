"""Cross-algorithm equivalence harness: naive oracle, randomized corpus
generation, and per-case execution with work/span reports.

Every algorithm under test must return exactly the naive-scan position
set; a mismatch raises with the case's seed so the failure is one command
away from reproduction.  The harness also checks the step-ledger laws
(work/span identities and bounds) that the per-algorithm analyses claim.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .ancestry import AncestryIndex, build_ancestry
from .halving import PairDict, build_tree_halving_dict, build_trie_halving_dict
from .interleaved import (LayeredIndex, build_layered_index,
                          par_query_interleaved, par_query_interleaved_threaded)
from .ledger import StepLedger
from .query import seq_query
from .suffixindex import SuffixIndex, build_suffix_tree, build_suffix_trie
from .textmodel import Pattern, make_text
from .treeparallel import par_query_tree2, par_query_tree2_threaded
from .trieparallel import par_query_trie, par_query_trie_threaded

ALGORITHMS = ("seq", "trie-par", "tree-par2", "interleaved")

# A suffix trie has a node per distinct substring; cap the text size for
# trie-backed algorithms so corpus runs stay near-linear overall.
TRIE_N_CAP = 256


def oracle_scan(raw: bytes | Sequence[int], pat: Pattern) -> tuple[int, ...]:
    """Ground truth: all 1-based i with raw[i..i+m-1] == pat, overlaps
    included."""
    hay = tuple(raw)
    m = pat.m
    return tuple(i + 1 for i in range(len(hay) - m + 1)
                 if hay[i:i + m] == pat.chars)


@dataclass(frozen=True)
class CorpusCase:
    """One reproducible random case; the seed alone determines the text
    and pattern."""

    seed: int
    n: int
    sigma: int
    m: int
    mode: str   # "present" | "random" | "mutated"

    def materialize(self) -> tuple[bytes, Pattern]:
        rng = random.Random(self.seed)
        raw = bytes(rng.randrange(97, 97 + self.sigma) for _ in range(self.n))
        m = min(self.m, self.n)
        if self.mode == "random":
            q = bytes(rng.randrange(97, 97 + self.sigma + 1) for _ in range(m))
        else:
            i = rng.randrange(0, self.n - m + 1)
            q = bytearray(raw[i:i + m])
            if self.mode == "mutated":
                q[rng.randrange(m)] ^= 1 << rng.randrange(2)
            q = bytes(q)
        return raw, Pattern.from_bytes(q)


def generate_corpus(trials: int, seed: int, n_lo: int = 8, n_hi: int = 2000,
                    sigmas: Sequence[int] = (1, 2, 4, 26)) -> list[CorpusCase]:
    """Deterministic corpus: text length log-uniform in [n_lo, n_hi] so
    small adversarial cases dominate while large ones still appear."""
    rng = random.Random(seed)
    cases = []
    for _ in range(trials):
        n = round(math.exp(rng.uniform(math.log(n_lo), math.log(n_hi))))
        sigma = rng.choice(list(sigmas))
        m = rng.randrange(1, n + 1)
        mode = rng.choice(["present", "present", "random", "mutated"])
        cases.append(CorpusCase(rng.randrange(1 << 48), n, sigma, m, mode))
    return cases


@dataclass
class AlgoReport:
    name: str            # e.g. "trie-par p=4"
    work: int
    span: int
    positions: tuple[int, ...]
    ledger: StepLedger


@dataclass
class CaseReport:
    case: CorpusCase
    expected: tuple[int, ...]
    runs: list[AlgoReport] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)


class EquivalenceError(AssertionError):
    pass


@dataclass
class IndexBundle:
    """All indexes a case needs, built once and shared across algorithms."""

    raw: bytes
    tree: SuffixIndex
    anc: AncestryIndex
    tree_dict: PairDict
    trie: Optional[SuffixIndex] = None
    trie_dict: Optional[PairDict] = None
    layered: Optional[LayeredIndex] = None


def build_bundle(raw: bytes, want_trie: bool = True,
                 layered_p: int = 8) -> IndexBundle:
    text = make_text(raw, 1)
    tree = build_suffix_tree(text)
    bundle = IndexBundle(raw=raw, tree=tree, anc=build_ancestry(tree),
                         tree_dict=build_tree_halving_dict(tree))
    if want_trie and len(raw) <= TRIE_N_CAP:
        bundle.trie = build_suffix_trie(text)
        bundle.trie_dict = build_trie_halving_dict(bundle.trie)
    if layered_p >= 2:
        bundle.layered = build_layered_index(raw, layered_p)
    return bundle


def _check(report: CaseReport, name: str, positions: tuple[int, ...]) -> None:
    if positions != report.expected:
        raise EquivalenceError(
            "%s returned %r, oracle says %r (reproduce with seed=%d n=%d "
            "sigma=%d m=%d mode=%s)" %
            (name, positions, report.expected, report.case.seed,
             report.case.n, report.case.sigma, report.case.m,
             report.case.mode))


def run_case(case: CorpusCase, algorithms: Iterable[str] = ALGORITHMS,
             p_values: Sequence[int] = (2, 4, 8, 16),
             j_values: Sequence[int] = (2, 4, 8),
             bundle: Optional[IndexBundle] = None,
             threaded: bool = False,
             check_laws: bool = True) -> CaseReport:
    """Run the selected algorithms, assert oracle equality, and return
    per-run (work, span, result).  Parameter combinations an algorithm
    rejects (e.g. p >= 2m) are recorded in ``skipped``."""
    algorithms = set(algorithms)
    unknown = algorithms - set(ALGORITHMS)
    if unknown:
        raise ValueError("unknown algorithms: %s" % sorted(unknown))
    raw, pat = case.materialize()
    report = CaseReport(case=case, expected=oracle_scan(raw, pat))
    if bundle is None:
        bundle = build_bundle(raw, want_trie="trie-par" in algorithms,
                              layered_p=max(j_values, default=0)
                              if "interleaved" in algorithms else 0)

    if "seq" in algorithms:
        led = StepLedger()
        res = seq_query(bundle.tree, pat, led)
        _check(report, "seq", res.positions)
        report.runs.append(AlgoReport("seq", led.work, led.span,
                                      res.positions, led))

    if "trie-par" in algorithms:
        if bundle.trie is None:
            report.skipped.append("trie-par (n > %d)" % TRIE_N_CAP)
        else:
            for p in p_values:
                if not p < 2 * pat.m:
                    report.skipped.append("trie-par p=%d (p >= 2m)" % p)
                    continue
                name = "trie-par p=%d" % p
                led = StepLedger()
                res = par_query_trie(bundle.trie, bundle.trie_dict, pat, p,
                                     led)
                if threaded:
                    _check(report, name + " threaded",
                           par_query_trie_threaded(bundle.trie,
                                                   bundle.trie_dict, pat,
                                                   p).positions)
                _check(report, name, res.positions)
                if check_laws and res.found:
                    # work identity: m characters + one probe per merged
                    # pair.
                    if led.work != pat.m + (p - 1):
                        raise EquivalenceError(
                            "%s work law violated: work=%d m=%d p=%d "
                            "(seed=%d)" % (name, led.work, pat.m, p,
                                           case.seed))
                report.runs.append(AlgoReport(name, led.work, led.span,
                                              res.positions, led))

    if "tree-par2" in algorithms:
        if pat.m < 2:
            report.skipped.append("tree-par2 (m < 2)")
        else:
            led = StepLedger()
            res = par_query_tree2(bundle.tree, bundle.anc, bundle.tree_dict,
                                  pat, led)
            if threaded:
                _check(report, "tree-par2 threaded",
                       par_query_tree2_threaded(bundle.tree, bundle.anc,
                                                bundle.tree_dict,
                                                pat).positions)
            _check(report, "tree-par2", res.positions)
            if check_laws:
                nav_cap = -(-5 * pat.m // 4) + 2
                if led.nav_chars > nav_cap:
                    raise EquivalenceError(
                        "tree-par2 nav law violated: nav=%d cap=%d (seed=%d)"
                        % (led.nav_chars, nav_cap, case.seed))
                if led.span > pat.m + 4:
                    raise EquivalenceError(
                        "tree-par2 span law violated: span=%d m=%d (seed=%d)"
                        % (led.span, pat.m, case.seed))
            report.runs.append(AlgoReport("tree-par2", led.work, led.span,
                                          res.positions, led))

    if "interleaved" in algorithms and bundle.layered is not None:
        for j in j_values:
            if j > bundle.layered.p:
                report.skipped.append("interleaved j=%d (j > p)" % j)
                continue
            name = "interleaved j=%d" % j
            led = StepLedger()
            res = par_query_interleaved(bundle.layered, pat, j, led)
            if threaded:
                _check(report, name + " threaded",
                       par_query_interleaved_threaded(bundle.layered, pat,
                                                      j).positions)
            _check(report, name, res.positions)
            if check_laws and res.found and pat.m >= j and j > 1:
                span_cap = 4 * (pat.m / j) * math.log2(j)
                if led.span > span_cap:
                    raise EquivalenceError(
                        "interleaved span law violated: span=%d cap=%.1f "
                        "j=%d (seed=%d)" % (led.span, span_cap, j,
                                            case.seed))
            report.runs.append(AlgoReport(name, led.work, led.span,
                                          res.positions, led))

    return report


def run_corpus(trials: int, seed: int, n_lo: int = 8, n_hi: int = 2000,
               sigmas: Sequence[int] = (1, 2, 4, 26),
               algorithms: Iterable[str] = ALGORITHMS,
               threaded: bool = False,
               progress=None) -> list[CaseReport]:
    """Generate and run a whole corpus; returns all case reports (raises
    on the first mismatch)."""
    reports = []
    for case in generate_corpus(trials, seed, n_lo, n_hi, sigmas):
        reports.append(run_case(case, algorithms, threaded=threaded))
        if progress is not None:
            progress(reports[-1])
    return reports
