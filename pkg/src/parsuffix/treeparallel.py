"""Two-lane parallel query in the suffix tree.

Lane 1 blindly navigates the left half of the query from the root.  Lane 2
navigates a right portion starting roughly one quarter in; whenever lane 1
overtakes lane 2's anchored start, lane 2's matched string is shortened
from the left via suffix links so that the two matched strings always
concatenate to a prefix of the query.  The pair of current nodes is probed
in the halving dictionary as the split point sweeps right; the deepest
verified hit is the query's node.

The stored pair for the query's node splits it at the shallowest node
covering half of its shortest string, and that split can sit anywhere in
lane 1's range, so probing must cover every (lane-1 node, lane-2 state)
the sweep passes: probes fire after every navigation step and every
shorten, against lane 2's current covering node and its ancestors (a
shorten can land past the stored right part, which is then an ancestor),
plus a lookahead at lane 2's next node before lane 1 overtakes it (the
balance condition otherwise skips exactly the stored pair when that next
edge is long).  After the concatenation first covers the query, lane 1
keeps sweeping to the end of its subquery so splits right of the meeting
point are probed too.  Splits left of lane 2's anchor need no probe: their
node starts within lane 1's reach, which is handled by reporting lane 1's
own node when it covers the whole query.

Dependency accounting: lane 1 is self-paced; every lane-2 step that reads
a lane-1 value becomes eligible one time unit after that value was
produced.  Dictionary probes never gate navigation — they only feed the
final answer selection — so they are counted as work but kept off the
critical path, as is the terminal text verification.
"""

from __future__ import annotations

import queue
import threading
from typing import Iterator, Optional

from .ancestry import AncestryIndex, shorten
from .halving import PairDict, probe
from .ledger import StepLedger
from .query import EMPTY, QueryResult
from .suffixindex import ROOT, NodeId, SuffixIndex, occurrences, verify_against_text
from .textmodel import Pattern
from .trieparallel import ParameterError


class _Absent(Exception):
    """Navigation fell off an edge: the pattern cannot occur."""


class _LeafExit(Exception):
    """A lane reached a leaf: at most one occurrence, at ``candidate``."""

    def __init__(self, candidate: int) -> None:
        self.candidate = candidate


_STOP_END = ("stop", None, 0)
_STOP_FELL_OFF = ("fell-off", None, 0)


def _lane1_edges(tree: SuffixIndex, pat: Pattern, half: int,
                 ledger: Optional[StepLedger]) -> Iterator[tuple[str, Optional[NodeId], int]]:
    """Lane 1's walk of Q[1 .. half], one (kind, node, done_time) event per
    edge.  Lazy, so work is charged only for edges actually consumed."""
    cur = ROOT
    while tree.nodes[cur].cum < half:
        nxt = tree.nodes[cur].children.get(pat.at(tree.nodes[cur].cum + 1))
        if nxt is None:
            yield _STOP_FELL_OFF
            return
        chars = min(tree.nodes[nxt].cum, half) - tree.nodes[cur].cum
        t = ledger.charge("lane1", "nav_chars", chars) if ledger else 0
        yield ("edge", nxt, t)
        cur = nxt
    yield _STOP_END


class _Peekable:
    def __init__(self, it: Iterator) -> None:
        self._it = it
        self._buf: Optional[tuple] = None

    def peek(self) -> tuple:
        if self._buf is None:
            self._buf = next(self._it)
        return self._buf

    def next(self) -> tuple:
        item = self.peek()
        self._buf = None
        return item


class _TwoLaneDriver:
    """Runs the probe sweep against a stream of lane-1 edges."""

    def __init__(self, tree: SuffixIndex, anc: AncestryIndex, dct: PairDict,
                 pat: Pattern, ledger: StepLedger, lane1) -> None:
        self.tree = tree
        self.anc = anc
        self.dct = dct
        self.pat = pat
        self.ledger = ledger
        self.lane1 = _Peekable(lane1)
        m = pat.m
        self.m = m
        self.half = (m + 1) // 2
        self.start2 = (m + 3) // 4          # Q2 = Q[start2+1 .. m]
        self.t_init = self.start2 + 1
        self.b1: NodeId = ROOT
        self.cum1 = 0
        self.t1 = 0
        self.lane1_done = False
        self.b2: NodeId = ROOT
        self.cum2 = 0                        # matched length of lane 2
        self.e2 = self.start2                # right end of lane 2's string in Q
        self.t2 = 0
        self.hits: set[NodeId] = set()
        self.probed: set[tuple[NodeId, NodeId]] = set()
        self.path1: dict[int, NodeId] = {0: ROOT}   # lane 1's visited nodes
        self.aligned = False

    # -- lane helpers ---------------------------------------------------

    @property
    def anchor(self) -> int:
        """Lane 2's string is Q[anchor+1 .. e2]."""
        return self.e2 - self.cum2

    def _lane1_peek_edge(self) -> Optional[NodeId]:
        if self.lane1_done:
            return None
        kind, node, _ = self.lane1.peek()
        if kind == "fell-off":
            raise _Absent
        if kind == "stop":
            self.lane1_done = True
            return None
        return node

    def _lane1_advance(self, reconcile: bool = True) -> None:
        _, node, t = self.lane1.next()
        self.b1 = node
        self.cum1 = self.tree.nodes[node].cum
        self.t1 = t
        self.path1[self.cum1] = node
        if self.tree.nodes[node].is_leaf:
            raise _LeafExit(self.tree.nodes[node].ref)
        if reconcile:
            self._apply_overlap()

    def _apply_overlap(self) -> None:
        """Shorten lane 2 from the left wherever lane 1 now overlaps it."""
        if not self.aligned:
            if self.cum1 >= self.anchor:
                self._align()
            return
        ov = self.cum1 - self.anchor
        if ov <= 0:
            return
        if ov >= self.cum2:
            # lane 1 covers lane 2's whole string; lane 2 restarts after it
            self.b2, self.cum2 = ROOT, 0
            self.e2 = self.cum1
            return
        self.b2 = shorten(self.anc, self.b2, ov, self.cum2 - ov)
        self.cum2 -= ov
        self.t2 = self.ledger.charge("lane2", "shortens", 1,
                                     ready=self.t1 + 1)
        if self.tree.nodes[self.b2].is_leaf:
            raise _LeafExit(self.tree.nodes[self.b2].ref - self.anchor)
        self._probe_chain()

    def _align(self) -> None:
        """First moment lane 1 reaches lane 2's anchored start: replay the
        shortening for every lane-1 node between the anchor and the current
        front, probing each replayed state (splits in that band would
        otherwise be passed without a probe)."""
        base_b2, base_cum2, base_anchor = self.b2, self.cum2, self.anchor
        for v in sorted(v for v in self.path1
                        if base_anchor <= v <= self.cum1):
            d = v - base_anchor
            if d >= base_cum2 and d > 0:
                node_v, cum_v = ROOT, 0
            elif d == 0:
                node_v, cum_v = base_b2, base_cum2
            else:
                node_v = shorten(self.anc, base_b2, d, base_cum2 - d)
                cum_v = base_cum2 - d
                self.t2 = self.ledger.charge("lane2", "shortens", 1,
                                             ready=self.t1 + 1)
            self._probe_ancestry(self.path1[v], node_v)
            # lane 2's next node may complete this split's stored pair
            if cum_v == self.tree.nodes[node_v].cum and self.e2 < self.m:
                nxt = self.tree.nodes[node_v].children.get(self.pat.at(self.e2 + 1))
                if nxt is not None:
                    self._probe(self.path1[v], nxt)
            if v == self.cum1:
                self.b2, self.cum2 = node_v, cum_v
                if node_v == ROOT and v > base_anchor:
                    self.e2 = self.cum1
        self.aligned = True
        nd = self.tree.nodes[self.b2]
        if nd.is_leaf and self.cum2 < nd.cum:
            raise _LeafExit(nd.ref - self.anchor)

    def _lane2_next(self) -> Optional[tuple[str, NodeId, int]]:
        """Lane 2's next move: the remainder of a partially covered edge,
        or the child for the next query character."""
        if self.cum2 < self.tree.nodes[self.b2].cum:
            return ("mid", self.b2, self.tree.nodes[self.b2].cum - self.cum2)
        if self.e2 >= self.m:
            return None
        nxt = self.tree.nodes[self.b2].children.get(self.pat.at(self.e2 + 1))
        if nxt is None:
            raise _Absent
        return ("child", nxt, self.tree.nodes[nxt].skip)

    def _lane2_take(self, kind: str, node: NodeId, d2: int, ready: int) -> None:
        chars = min(self.e2 + d2, self.m) - self.e2
        self.t2 = self.ledger.charge("lane2", "nav_chars", chars, ready=ready)
        self.b2 = node
        self.cum2 += d2
        self.e2 += d2
        nd = self.tree.nodes[node]
        if nd.is_leaf and self.cum2 == nd.cum:
            raise _LeafExit(nd.ref - self.anchor)
        self._probe_chain()

    # -- probing --------------------------------------------------------

    def _probe(self, a: NodeId, b: NodeId) -> None:
        if (a, b) in self.probed:
            return
        self.probed.add((a, b))
        w = probe(self.dct, self.tree, a, b)
        self.ledger.charge("probe", "probes", 1, timed=False)
        if w is not None:
            self.hits.add(w)

    def _probe_ancestry(self, a: NodeId, b: NodeId) -> None:
        """Probe (a, b) and (a, every ancestor of b): after a shorten, the
        stored right part may be any prefix of lane 2's covered string."""
        chain = []
        while b != ROOT:
            chain.append(b)
            b = self.tree.nodes[b].parent
        chain.append(ROOT)
        for node in reversed(chain):
            self._probe(a, node)

    def _probe_chain(self) -> None:
        if self.aligned and self.anchor == self.cum1:
            self._probe_ancestry(self.b1, self.b2)

    # -- phases -----------------------------------------------------------

    def _initial_phase(self) -> None:
        """Both lanes independently navigate roughly a quarter of the query,
        stopping at the last node not beyond t_init."""
        while True:
            node = self._lane1_peek_edge()
            if node is None or self.cum1 >= self.t_init:
                break
            if self.tree.nodes[node].cum > self.t_init:
                break
            self._lane1_advance(reconcile=False)
        while True:
            info = self._lane2_next()
            if info is None:
                break
            kind, node, d2 = info
            if self.cum2 + d2 > self.t_init:
                break
            self._lane2_take(kind, node, d2, ready=0)
        self._apply_overlap()

    def _navigate_one(self) -> None:
        """One step of the core loop: extend lane 2 by one edge, first
        extending lane 1 (shortening lane 2) while lane 2's next edge would
        make it longer than lane 1."""
        while True:
            info = self._lane2_next()
            if info is None:
                # lane 2 exhausted: only reachable while lane 1 lags behind
                if self._lane1_peek_edge() is None:
                    raise AssertionError("both lanes stuck before covering Q")
                self._lane1_advance()
                if self.cum1 + self.cum2 >= self.m:
                    return
                continue
            kind, node, d2 = info
            if self.cum1 >= self.cum2 + d2:
                self._lane2_take(kind, node, d2, ready=self.t1 + 1)
                return
            if self._lane1_peek_edge() is not None:
                # the pair skipped by the balance condition may be exactly
                # the stored one; probe it before overtaking
                if kind == "child" and self.anchor == self.cum1:
                    self._probe(self.b1, node)
                self._lane1_advance()
                if self.cum1 + self.cum2 >= self.m:
                    return
                continue
            # lane 1 exhausted its subquery; lane 2 continues regardless
            self._lane2_take(kind, node, d2, ready=self.t1 + 1)
            return

    def _rebalance(self) -> None:
        """The concatenation covers the query, but the stored split may sit
        to the right of the meeting point: keep sweeping lane 1 to the end
        of its subquery, shortening and probing as usual."""
        while not self._covering_hit() and \
                self._lane1_peek_edge() is not None:
            self._lane1_advance()

    def _covering_hit(self) -> bool:
        return any(self.tree.nodes[h].cum >= self.m for h in self.hits)

    # -- result assembly -------------------------------------------------

    def _promote(self, nid: NodeId) -> NodeId:
        """Shallowest ancestor-or-self still covering the whole query."""
        while True:
            par = self.tree.nodes[nid].parent
            if par is None or self.tree.nodes[par].cum < self.m:
                return nid
            nid = par

    def _finish(self) -> QueryResult:
        candidates = {self._promote(h) for h in self.hits
                      if self.tree.nodes[h].cum >= self.m}
        if self.cum1 >= self.m:
            candidates.add(self._promote(self.b1))
        for cand in candidates:
            # terminal check of the characters patricia navigation skipped,
            # split across both lanes; work, but off the critical path
            self.ledger.charge("lane1", "compares", self.half, timed=False)
            self.ledger.charge("lane2", "compares", self.m - self.half,
                               timed=False)
            if verify_against_text(self.tree, cand, self.pat):
                return QueryResult(tuple(occurrences(self.tree, cand)), cand)
        return EMPTY

    def _single_occurrence(self, candidate: int) -> QueryResult:
        n = self.tree.text.base_len
        if candidate < 1 or candidate + self.m - 1 > n:
            return EMPTY
        self.ledger.charge("lane1", "compares", self.half, timed=False)
        self.ledger.charge("lane2", "compares", self.m - self.half,
                           timed=False)
        start = candidate - 1
        if self.tree.data[start: start + self.m] != self.pat.chars:
            return EMPTY
        return QueryResult((candidate,), None)

    def run(self) -> QueryResult:
        try:
            self._initial_phase()
            while self.cum1 + self.cum2 < self.m:
                self._navigate_one()
            self._rebalance()
        except _Absent:
            return EMPTY
        except _LeafExit as leaf:
            return self._single_occurrence(leaf.candidate)
        return self._finish()


def par_query_tree2(tree: SuffixIndex, anc: AncestryIndex, dct: PairDict,
                    pat: Pattern,
                    ledger: Optional[StepLedger] = None) -> QueryResult:
    """Deterministic simulated two-lane suffix-tree query."""
    _check_args(tree, dct, pat)
    ledger = ledger if ledger is not None else StepLedger()
    lane1 = _lane1_edges(tree, pat, (pat.m + 1) // 2, ledger)
    return _TwoLaneDriver(tree, anc, dct, pat, ledger, lane1).run()


def par_query_tree2_threaded(tree: SuffixIndex, anc: AncestryIndex,
                             dct: PairDict, pat: Pattern) -> QueryResult:
    """Pipelined execution: a producer thread walks lane 1's whole subquery
    into a bounded queue; lane 2 consumes the edge events.  Results are
    identical to the simulated mode because the driver logic is shared."""
    _check_args(tree, dct, pat)
    q: queue.Queue = queue.Queue(maxsize=4)

    def produce() -> None:
        for event in _lane1_edges(tree, pat, (pat.m + 1) // 2, None):
            q.put(event)

    worker = threading.Thread(target=produce, daemon=True)
    worker.start()

    def consume() -> Iterator[tuple]:
        while True:
            event = q.get()
            yield event
            if event[0] != "edge":
                return

    try:
        return _TwoLaneDriver(tree, anc, dct, pat, StepLedger(), consume()).run()
    finally:
        # drain so the producer can finish even if the driver exited early
        while worker.is_alive():
            try:
                q.get_nowait()
            except queue.Empty:
                worker.join(timeout=0.01)


def _check_args(tree: SuffixIndex, dct: PairDict, pat: Pattern) -> None:
    if tree.kind != "tree":
        raise ParameterError("par_query_tree2 requires a suffix tree")
    if dct.owner is not tree:
        raise ParameterError("dictionary was built from a different index")
    if pat.m < 2:
        raise ParameterError("p=2 requires m >= 2 (p < 2m)")
