"""Layered k-interleaved suffix trees and the layered parallel query.

Layer k indexes every suffix of every k-interleaved subsequence of the
delimiter-extended text.  A query is answered by navigating the j
interleaved subsequences of the pattern in layer j concurrently, then
repeatedly deinterleaving pairs of navigation paths down the layers: a
dictionary per layer maps a pair of nodes (covering the two interleaved
halves of a string) to the node of the deinterleaved string one layer
below.  After lg j rounds the surviving path lives in the ordinary suffix
tree, where the covering node of the whole pattern is verified against the
text and its subtree reported.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from .halving import PairDict, PairDictError, probe
from .ledger import StepLedger
from .query import EMPTY, QueryResult
from .suffixindex import (ROOT, NodeId, SuffixIndex,
                          build_generalized_suffix_tree, occurrences,
                          verify_against_text)
from .textmodel import Pattern, interleave, make_text
from .trieparallel import ParameterError

NavPath = list[tuple[NodeId, int]]          # (node, cumulative skip)


@dataclass(frozen=True)
class LayerIndex:
    k: int
    tree: SuffixIndex


class LayeredIndex:
    def __init__(self, raw: bytes, p: int) -> None:
        self.raw = bytes(raw)
        self.p = p
        self.layers: dict[int, LayerIndex] = {}
        self.dicts: dict[int, PairDict] = {}   # keyed by the upper layer's k

    def layer(self, k: int) -> LayerIndex:
        return self.layers[k]


def _is_pow2(x: int) -> bool:
    return x >= 1 and (x & (x - 1)) == 0


def build_layer(raw: bytes | Sequence[int], k: int) -> LayerIndex:
    """Generalized suffix tree over the k interleaved subsequences of the
    text extended with k unique delimiters (so every subsequence ends with
    its own delimiter)."""
    if not _is_pow2(k):
        raise ParameterError("layer stride must be a power of two")
    text = make_text(raw, k)
    if text.base_len < 1:
        raise ValueError("text must be nonempty")
    seqs = interleave(text.symbols, k)
    return LayerIndex(k, build_generalized_suffix_tree(text, seqs, k))


def _walk_cover_seq(index: SuffixIndex, seq: Sequence[int]) -> NodeId:
    """First node with cumulative skip >= |seq| on seq's navigation path."""
    cur = ROOT
    while index.nodes[cur].cum < len(seq):
        nxt = index.nodes[cur].children.get(seq[index.nodes[cur].cum])
        if nxt is None:
            raise PairDictError("layer navigation fell off (layer mismatch)")
        cur = nxt
    return cur


def build_layer_dict(upper: LayerIndex, lower: LayerIndex) -> PairDict:
    """One entry per lower-layer node: its shortest string, split into the
    two stride-doubled halves, covered by upper-layer nodes."""
    if upper.k != 2 * lower.k:
        raise ParameterError("layer dict needs strides k and k/2")
    d = PairDict(owner=upper.tree, target=lower.tree)
    low = lower.tree
    for nid in range(1, len(low.nodes)):
        nd = low.nodes[nid]
        short_len = nd.cum - nd.skip + 1
        start = nd.leftmost_leaf_ref
        s = low.data[start - 1: start - 1 + short_len]
        d.add(_walk_cover_seq(upper.tree, s[0::2]),
              _walk_cover_seq(upper.tree, s[1::2]), nid)
    return d


def build_layered_index(raw: bytes, p: int) -> LayeredIndex:
    if not _is_pow2(p):
        raise ParameterError("p must be a power of two")
    idx = LayeredIndex(raw, p)
    k = 1
    while k <= p:
        idx.layers[k] = build_layer(raw, k)
        if k > 1:
            idx.dicts[k] = build_layer_dict(idx.layers[k], idx.layers[k // 2])
        k *= 2
    return idx


def _record_path_seq(index: SuffixIndex, seq: Sequence[int]) -> tuple[NavPath, bool]:
    """Navigation path of a raw symbol sequence, root included, stopping at
    the first node covering the sequence.  Second value is False when the
    walk fell off before covering the sequence."""
    cur = ROOT
    path: NavPath = [(cur, 0)]
    while index.nodes[cur].cum < len(seq):
        nxt = index.nodes[cur].children.get(seq[index.nodes[cur].cum])
        if nxt is None:
            return path, False
        cur = nxt
        path.append((cur, index.nodes[cur].cum))
    return path, True


def deinterleave_paths(path1: NavPath, path2: NavPath, dct: PairDict,
                       ledger: Optional[StepLedger] = None,
                       lane: str = "merge") -> NavPath:
    """Two-pointer merge of two upper-layer paths into the lower-layer path
    of their deinterleaving.

    A stored pair for a lower node whose shortest string has length l pairs
    the path-1 node covering ceil(l/2) with the path-2 node covering
    floor(l/2).  Sweeping l upward, pointer 1 moves into its next node when
    l reaches 2*cum1 + 1 and pointer 2 when l reaches 2*cum2 + 2 (cums of
    the current nodes), so advancing in that threshold order and probing
    the current pair after every advance visits every feasible stored pair
    exactly once.  Successful probes come out in increasing-cum order."""
    lower = dct.target
    hits: dict[NodeId, int] = {}

    def pr(a: NodeId, b: NodeId) -> None:
        if ledger is not None:
            ledger.charge(lane, "probes", 1, timed=False)
        w = probe(dct, dct.owner, a, b)
        if w is not None:
            hits[w] = lower.nodes[w].cum

    i = j = 0
    while i < len(path1) - 1 or j < len(path2) - 1:
        can1 = i < len(path1) - 1
        can2 = j < len(path2) - 1
        if can1 and (not can2 or
                     2 * path1[i][1] + 1 < 2 * path2[j][1] + 2):
            i += 1
        else:
            j += 1
        pr(path1[i][0], path2[j][0])
    return sorted(hits.items(), key=lambda item: item[1])


def _sub_len(m: int, i: int, k: int) -> int:
    """Length of the i-th (1-based) k-interleaved subsequence of m chars."""
    return (m - i + k) // k


def _truncate(path: NavPath, length: int) -> NavPath:
    """Drop nodes past the first one covering ``length`` (spurious deeper
    dictionary hits would otherwise shrink the reported subtree)."""
    out: NavPath = []
    for node, cum in path:
        out.append((node, cum))
        if cum >= length:
            break
    return out


def _merge_down(index: LayeredIndex, pat: Pattern, j: int,
                paths: dict[int, NavPath], ledger: StepLedger,
                nav_ready: int, mapper) -> NavPath:
    """lg j rounds of pairwise deinterleaving; at stride k, subsequences i
    and i + k/2 combine into the i-th subsequence of stride k/2.  The merge
    clock models each pair's probes split across its idle lanes."""
    k = j
    lanes_per_pair = 2
    t = nav_ready
    while k > 1:
        dct = index.dicts[k]
        half = k // 2

        def merge_one(i: int) -> tuple[NavPath, int]:
            before = ledger.probes
            merged = deinterleave_paths(paths[i], paths[i + half], dct,
                                        ledger, lane="merge%d" % k)
            merged = _truncate([(ROOT, 0)] + merged,
                               _sub_len(pat.m, i, half))
            return merged, ledger.probes - before

        results = mapper(merge_one, list(range(1, half + 1)))
        spans = []
        new_paths: dict[int, NavPath] = {}
        for i, (merged, nprobes) in zip(range(1, half + 1), results):
            new_paths[i] = merged
            spans.append(math.ceil(nprobes / lanes_per_pair))
        t = ledger.advance("merge", max(spans, default=0), ready=t)
        paths = new_paths
        k = half
        lanes_per_pair *= 2
    return paths[1]


def _seq_mapper(fn, items):
    return [fn(i) for i in items]


def par_query_interleaved(index: LayeredIndex, pat: Pattern, j: int,
                          ledger: Optional[StepLedger] = None,
                          mapper=_seq_mapper) -> QueryResult:
    """Layered query: j lanes navigate the pattern's j-interleaved
    subsequences in layer j, then paths are deinterleaved down to layer 1
    where the covering node is verified and reported."""
    if not _is_pow2(j) or j > index.p:
        raise ParameterError("j must be a power of two with j <= p")
    ledger = ledger if ledger is not None else StepLedger()
    layer = index.layer(j)
    subs = [tuple(pat.chars[i::j]) for i in range(j)]

    def navigate_lane(i: int) -> tuple[NavPath, bool, int]:
        path, ok = _record_path_seq(layer.tree, subs[i - 1])
        chars = min(path[-1][1] + (0 if ok else 1), len(subs[i - 1]))
        return path, ok, chars

    lane_results = mapper(navigate_lane, list(range(1, j + 1)))
    paths: dict[int, NavPath] = {}
    nav_ready = 0
    for i, (path, ok, chars) in zip(range(1, j + 1), lane_results):
        if not ok:
            return EMPTY
        if chars:
            nav_ready = max(nav_ready,
                            ledger.charge("lane%d" % i, "nav_chars", chars))
        paths[i] = path

    final = _merge_down(index, pat, j, paths, ledger, nav_ready, mapper)
    node, cum = final[-1]
    if node == ROOT or cum < pat.m:
        return EMPTY
    tree = index.layer(1).tree
    ledger.charge("verify", "compares", pat.m, timed=False)
    if not verify_against_text(tree, node, pat):
        return EMPTY
    return QueryResult(tuple(occurrences(tree, node)), node)


def par_query_interleaved_threaded(index: LayeredIndex, pat: Pattern,
                                   j: int) -> QueryResult:
    """Thread-per-lane navigation and thread-per-pair merging with a
    barrier between layers.  Identical results to the simulated mode by
    construction (same driver, parallel map)."""
    with ThreadPoolExecutor(max_workers=max(2, j)) as pool:
        def mapper(fn, items):
            return list(pool.map(fn, items))
        return par_query_interleaved(index, pat, j, StepLedger(), mapper)
