"""Suffix tries and patricia-compressed suffix trees over a static text.

Both index kinds share one arena-backed node representation.  A node's
incoming edge is described only by its first (discriminator) character and
its length (``skip``); the full label is recovered from the indexed symbol
sequence via ``leftmost_leaf_ref``.  Navigation therefore compares only
discriminator characters, and callers must verify skipped characters
against the text before trusting a match (patricia semantics).

Generalized trees over several symbol sequences (used by the interleaved
layers) are supported by concatenating the sequences into one ``data``
array and restricting suffixes to their own sequence.  Each sequence ends
with a unique delimiter, so no suffix is a prefix of another.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence

from .textmodel import Pattern, Text, is_delimiter, symbol_str

NodeId = int
ROOT: NodeId = 0


@dataclass
class Node:
    parent: Optional[NodeId]
    skip: int                    # incoming edge length in symbols (root: 0)
    cum: int                     # cumulative skip value root -> here
    children: dict[int, NodeId] = field(default_factory=dict)
    ref: Optional[int] = None    # for leaves: 1-based suffix start in data
    leftmost_leaf_ref: int = 0   # 1-based data position of one suffix below
    suffix_link: Optional[NodeId] = None

    @property
    def is_leaf(self) -> bool:
        return not self.children


class NavStatus(Enum):
    FULL_MATCH = "full-match"
    MISMATCH = "mismatch"
    FELL_OFF = "fell-off"


@dataclass(frozen=True)
class NavOutcome:
    node: NodeId
    matched: int
    status: NavStatus


class SuffixIndex:
    """Arena of nodes over an indexed symbol sequence.

    ``data`` is the concatenation of the indexed sequences (just the text
    symbols for plain indexes).  ``seq_starts`` holds the 1-based data
    position where each sequence begins; ``stride`` is the interleaving
    stride (1 for plain indexes), used to map leaf refs back to positions
    in the original text.
    """

    def __init__(self, text: Text, kind: str, data: Sequence[int],
                 seq_starts: Sequence[int], stride: int) -> None:
        assert kind in ("trie", "tree")
        self.text = text
        self.kind = kind
        self.data = tuple(data)
        self.seq_starts = tuple(seq_starts)
        self.stride = stride
        self.nodes: list[Node] = [Node(parent=None, skip=0, cum=0)]
        self.root: NodeId = ROOT

    # -- raw access ---------------------------------------------------

    def node(self, nid: NodeId) -> Node:
        return self.nodes[nid]

    def at(self, pos: int) -> int:
        """Symbol at 1-based data position."""
        return self.data[pos - 1]

    def __len__(self) -> int:
        return len(self.nodes)

    def new_node(self, parent: NodeId, skip: int, lref: int) -> NodeId:
        nid = len(self.nodes)
        self.nodes.append(Node(parent=parent, skip=skip,
                               cum=self.nodes[parent].cum + skip,
                               leftmost_leaf_ref=lref))
        return nid

    def spelling(self, nid: NodeId) -> tuple[int, ...]:
        """The node's longest corresponding substring."""
        nd = self.nodes[nid]
        r = nd.leftmost_leaf_ref
        return self.data[r - 1: r - 1 + nd.cum]

    def shortest_len(self, nid: NodeId) -> int:
        """Length of the node's shortest corresponding substring."""
        nd = self.nodes[nid]
        return nd.cum - nd.skip + 1

    def leaves_under(self, nid: NodeId) -> Iterable[Node]:
        stack = [nid]
        while stack:
            nd = self.nodes[stack.pop()]
            if nd.is_leaf:
                yield nd
            else:
                stack.extend(reversed(list(nd.children.values())))

    def data_pos_to_text_pos(self, dpos: int) -> int:
        """Map a 1-based data position to the 1-based original-text position
        of the symbol stored there (delimiter tail positions map past n)."""
        si = 0
        for i, start in enumerate(self.seq_starts):
            if start <= dpos:
                si = i
            else:
                break
        offset = dpos - self.seq_starts[si]          # 0-based within sequence
        return (si + 1) + offset * self.stride

    def finalize(self) -> None:
        """Sort children by symbol and recompute leftmost leaf refs
        bottom-up, so tree order and serialization are deterministic."""
        order = self._topo_order()
        for nid in order:
            nd = self.nodes[nid]
            nd.children = dict(sorted(nd.children.items()))
        for nid in reversed(order):
            nd = self.nodes[nid]
            if nd.is_leaf:
                if nd.ref is not None:
                    nd.leftmost_leaf_ref = nd.ref
            else:
                first = next(iter(nd.children.values()))
                nd.leftmost_leaf_ref = self.nodes[first].leftmost_leaf_ref

    def _topo_order(self) -> list[NodeId]:
        order: list[NodeId] = []
        stack = [self.root]
        while stack:
            nid = stack.pop()
            order.append(nid)
            stack.extend(self.nodes[nid].children.values())
        return order


# -- construction ------------------------------------------------------


def _suffix_ranges(index: SuffixIndex) -> list[tuple[int, int]]:
    starts = list(index.seq_starts) + [len(index.data) + 1]
    return [(starts[i], starts[i + 1] - 1) for i in range(len(starts) - 1)]


def build_suffix_trie(text: Text) -> SuffixIndex:
    """Suffix trie by direct suffix insertion: one node per distinct
    nonempty substring, all skip values 1."""
    if len(text) < 1:
        raise ValueError("text must be nonempty")
    idx = SuffixIndex(text, "trie", text.symbols, (1,), 1)
    for s in range(1, len(text) + 1):
        cur = idx.root
        for pos in range(s, len(text) + 1):
            c = idx.at(pos)
            nxt = idx.nodes[cur].children.get(c)
            if nxt is None:
                nxt = idx.new_node(cur, 1, s)
                idx.nodes[cur].children[c] = nxt
            cur = nxt
        if idx.nodes[cur].ref is None:
            idx.nodes[cur].ref = s
    idx.finalize()
    return idx


def build_suffix_tree(text: Text) -> SuffixIndex:
    """Suffix tree by naive suffix insertion with edge splitting.

    Quadratic worst case; the reference builder for desk-scale inputs.
    """
    if len(text) < 1:
        raise ValueError("text must be nonempty")
    idx = SuffixIndex(text, "tree", text.symbols, (1,), 1)
    _insert_all_suffixes(idx)
    idx.finalize()
    return idx


def build_generalized_suffix_tree(text: Text, sequences: Sequence[Sequence[int]],
                                  stride: int) -> SuffixIndex:
    """Suffix tree over all suffixes of all given sequences.

    Each sequence must end with a delimiter unique across sequences.
    """
    data: list[int] = []
    seq_starts: list[int] = []
    for seq in sequences:
        seq_starts.append(len(data) + 1)
        data.extend(seq)
    idx = SuffixIndex(text, "tree", data, seq_starts, stride)
    _insert_all_suffixes(idx)
    idx.finalize()
    return idx


def _insert_all_suffixes(idx: SuffixIndex) -> None:
    for lo, hi in _suffix_ranges(idx):
        for s in range(lo, hi + 1):
            _insert_suffix(idx, s, hi)


def _insert_suffix(idx: SuffixIndex, s: int, e: int) -> None:
    cur = idx.root
    pos = s
    while True:
        child = idx.nodes[cur].children.get(idx.at(pos))
        if child is None:
            leaf = idx.new_node(cur, e - pos + 1, s)
            idx.nodes[leaf].ref = s
            idx.nodes[cur].children[idx.at(pos)] = leaf
            return
        cn = idx.nodes[child]
        lref = cn.leftmost_leaf_ref
        j = idx.nodes[cur].cum + 1
        while j <= cn.cum and pos <= e and idx.at(lref + j - 1) == idx.at(pos):
            j += 1
            pos += 1
        if j > cn.cum:
            if pos > e:
                # suffix ends exactly at an existing node; impossible with
                # unique terminating delimiters
                raise AssertionError("duplicate suffix during construction")
            cur = child
            continue
        if pos > e:
            raise AssertionError("suffix is a proper edge prefix; "
                                 "text lacks a unique terminator")
        # split the edge at j-1 matched symbols
        mid = idx.new_node(cur, (j - 1) - idx.nodes[cur].cum, lref)
        mn = idx.nodes[mid]
        idx.nodes[cur].children[idx.at(lref + idx.nodes[cur].cum)] = mid
        cn.parent = mid
        cn.skip = cn.cum - (j - 1)
        mn.children[idx.at(lref + j - 1)] = child
        leaf = idx.new_node(mid, e - pos + 1, s)
        idx.nodes[leaf].ref = s
        mn.children[idx.at(pos)] = leaf
        return


# -- queries -----------------------------------------------------------


def navigate(index: SuffixIndex, pat: Pattern) -> NavOutcome:
    """Patricia navigation: follow discriminator characters until reaching
    the first node with cumulative skip >= the pattern length."""
    cur = index.root
    while index.nodes[cur].cum < pat.m:
        nxt = index.nodes[cur].children.get(pat.at(index.nodes[cur].cum + 1))
        if nxt is None:
            return NavOutcome(cur, index.nodes[cur].cum, NavStatus.FELL_OFF)
        cur = nxt
    return NavOutcome(cur, pat.m, NavStatus.FULL_MATCH)


def record_path(index: SuffixIndex, pat: Pattern) -> list[tuple[NodeId, int]]:
    """Like :func:`navigate` but returns every node visited root->final,
    as (node, cumulative skip) pairs.  On failure the longest successfully
    navigated path is returned."""
    cur = index.root
    path = [(cur, 0)]
    while index.nodes[cur].cum < pat.m:
        nxt = index.nodes[cur].children.get(pat.at(index.nodes[cur].cum + 1))
        if nxt is None:
            break
        cur = nxt
        path.append((cur, index.nodes[cur].cum))
    return path


def occurrences(index: SuffixIndex, nid: NodeId) -> list[int]:
    """Sorted 1-based text positions of all suffixes below ``nid``,
    excluding suffixes that begin inside the delimiter tail."""
    out = []
    for leaf in index.leaves_under(nid):
        if leaf.ref is None:
            continue
        pos = index.data_pos_to_text_pos(leaf.ref)
        if pos <= index.text.base_len:
            out.append(pos)
    out.sort()
    return out


def verify_against_text(index: SuffixIndex, nid: NodeId, pat: Pattern) -> bool:
    """Check the characters skipped during patricia navigation: true iff
    the node's label actually starts with the pattern."""
    r = index.nodes[nid].leftmost_leaf_ref
    if r + pat.m - 1 > len(index.data):
        return False
    return index.data[r - 1: r - 1 + pat.m] == pat.chars


# -- test / debugging helpers -----------------------------------------


def find_exact(index: SuffixIndex, chars: Sequence[int]) -> Optional[NodeId]:
    """The node whose longest corresponding substring is exactly ``chars``,
    or None.  Compares every character, not just discriminators."""
    want = tuple(chars)
    cur = index.root
    while index.nodes[cur].cum < len(want):
        nxt = index.nodes[cur].children.get(want[index.nodes[cur].cum])
        if nxt is None:
            return None
        cur = nxt
    if index.nodes[cur].cum != len(want):
        return None
    return cur if index.spelling(cur) == want else None


def find_node(index: SuffixIndex, label: str) -> NodeId:
    """Test helper: node for an ASCII label, raising if absent."""
    nid = find_exact(index, tuple(label.encode()))
    if nid is None:
        raise KeyError("no node for %r" % label)
    return nid


def describe(index: SuffixIndex, nid: NodeId) -> str:
    return "".join(symbol_str(c) for c in index.spelling(nid))
