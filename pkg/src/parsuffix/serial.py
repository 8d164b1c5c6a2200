"""Versioned binary container for built indexes.

Layout (all integers little-endian):

    magic   "PQST"
    version u8      (currently 1)
    kind    u8      (0 = trie, 1 = tree, 2 = interleaved)
    p       u32     (layer count bound; 1 for trie/tree)
    rawlen  u64, raw text bytes

    kind 0/1:  one index block, one pair-dict block
    kind 2:    index blocks for k = 1, 2, 4, ..., p (in that order), then
               pair-dict blocks for each upper k = 2, 4, ..., p

    index block:
        stride u32, node count u32, then per node (in id order):
        parent u32 (0xFFFFFFFF for the root), skip u32,
        ref u32 (0 = none), child count u16,
        then per child: symbol u16, child id u32

    pair-dict block:
        entry count u32, then (a u32, b u32, w u32) triples sorted by key

Only the structural fields are stored; cumulative skips, leftmost leaf
references and child ordering are recomputed on load, and suffix links /
lifting tables are rebuilt on demand.  Node ids survive a round trip
unchanged, so dictionary triples and query traces stay comparable.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import Optional

from .halving import PairDict
from .interleaved import LayerIndex, LayeredIndex
from .suffixindex import Node, SuffixIndex
from .textmodel import Text, interleave, make_text

MAGIC = b"PQST"
VERSION = 1
_KINDS = {"trie": 0, "tree": 1, "interleaved": 2}
_KIND_NAMES = {v: k for k, v in _KINDS.items()}
_NO_PARENT = 0xFFFFFFFF


class ContainerError(ValueError):
    pass


@dataclass
class Container:
    """A built index plus everything its queries need."""

    kind: str                      # "trie" | "tree" | "interleaved"
    raw: bytes
    p: int
    index: Optional[SuffixIndex] = None       # trie / tree kinds
    dct: Optional[PairDict] = None            # halving dict for the index
    layered: Optional[LayeredIndex] = None    # interleaved kind


def build_container(raw: bytes, kind: str, p: int = 1) -> Container:
    from .ancestry import build_ancestry  # noqa: F401  (validated on query)
    from .halving import build_tree_halving_dict, build_trie_halving_dict
    from .interleaved import build_layered_index
    from .suffixindex import build_suffix_tree, build_suffix_trie

    if kind == "trie":
        idx = build_suffix_trie(make_text(raw, 1))
        return Container(kind, raw, 1, idx, build_trie_halving_dict(idx))
    if kind == "tree":
        idx = build_suffix_tree(make_text(raw, 1))
        return Container(kind, raw, 1, idx, build_tree_halving_dict(idx))
    if kind == "interleaved":
        return Container(kind, raw, p, layered=build_layered_index(raw, p))
    raise ContainerError("unknown index kind %r" % kind)


# -- encoding ----------------------------------------------------------


def _pack_index(out: bytearray, index: SuffixIndex) -> None:
    out += struct.pack("<II", index.stride, len(index.nodes))
    for nd in index.nodes:
        parent = _NO_PARENT if nd.parent is None else nd.parent
        out += struct.pack("<IIIH", parent, nd.skip, nd.ref or 0,
                           len(nd.children))
        for sym, child in sorted(nd.children.items()):
            out += struct.pack("<HI", sym, child)


def _pack_dict(out: bytearray, d: PairDict) -> None:
    out += struct.pack("<I", len(d.entries))
    for (a, b), w in sorted(d.entries.items()):
        out += struct.pack("<III", a, b, w)


def dump_container(cont: Container) -> bytes:
    out = bytearray()
    out += MAGIC
    out += struct.pack("<BBI", VERSION, _KINDS[cont.kind], cont.p)
    out += struct.pack("<Q", len(cont.raw))
    out += cont.raw
    if cont.kind in ("trie", "tree"):
        _pack_index(out, cont.index)
        _pack_dict(out, cont.dct)
    else:
        k = 1
        while k <= cont.p:
            _pack_index(out, cont.layered.layers[k].tree)
            k *= 2
        k = 2
        while k <= cont.p:
            _pack_dict(out, cont.layered.dicts[k])
            k *= 2
    return bytes(out)


# -- decoding ----------------------------------------------------------


class _Reader:
    def __init__(self, data: bytes) -> None:
        self.data = data
        self.pos = 0

    def take(self, fmt: str) -> tuple:
        size = struct.calcsize(fmt)
        if self.pos + size > len(self.data):
            raise ContainerError("truncated container")
        vals = struct.unpack_from(fmt, self.data, self.pos)
        self.pos += size
        return vals

    def take_bytes(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise ContainerError("truncated container")
        out = self.data[self.pos:self.pos + n]
        self.pos += n
        return out


def _layer_text_and_seqs(raw: bytes, stride: int) -> tuple[Text, list]:
    text = make_text(raw, stride)
    return text, interleave(text.symbols, stride)


def _unpack_index(rd: _Reader, raw: bytes, kind: str) -> SuffixIndex:
    stride, count = rd.take("<II")
    if count < 1:
        raise ContainerError("index block has no root")
    text, seqs = _layer_text_and_seqs(raw, stride)
    data: list[int] = []
    seq_starts: list[int] = []
    for seq in seqs:
        seq_starts.append(len(data) + 1)
        data.extend(seq)
    index = SuffixIndex(text, kind, data, seq_starts, stride)
    index.nodes.clear()
    for nid in range(count):
        parent, skip, ref, nchild = rd.take("<IIIH")
        nd = Node(parent=None if parent == _NO_PARENT else parent,
                  skip=skip, cum=0, ref=ref or None)
        for _ in range(nchild):
            sym, child = rd.take("<HI")
            nd.children[sym] = child
        index.nodes.append(nd)
    if index.nodes[0].parent is not None:
        raise ContainerError("node 0 is not a root")
    for nid in index._topo_order():            # parents before children
        nd = index.nodes[nid]
        nd.cum = nd.skip if nd.parent is None else \
            index.nodes[nd.parent].cum + nd.skip
    index.finalize()
    return index


def _unpack_dict(rd: _Reader, owner: SuffixIndex,
                 target: SuffixIndex) -> PairDict:
    (count,) = rd.take("<I")
    d = PairDict(owner=owner, target=target)
    nodes_o, nodes_t = len(owner.nodes), len(target.nodes)
    for _ in range(count):
        a, b, w = rd.take("<III")
        if a >= nodes_o or b >= nodes_o or w >= nodes_t:
            raise ContainerError("dictionary entry references missing node")
        d.add(a, b, w)
    return d


def load_container(data: bytes) -> Container:
    rd = _Reader(data)
    if rd.take_bytes(4) != MAGIC:
        raise ContainerError("bad magic (not a PQST container)")
    version, kind_code, p = rd.take("<BBI")
    if version != VERSION:
        raise ContainerError("unsupported container version %d" % version)
    if kind_code not in _KIND_NAMES:
        raise ContainerError("unknown index kind code %d" % kind_code)
    kind = _KIND_NAMES[kind_code]
    (rawlen,) = rd.take("<Q")
    raw = rd.take_bytes(rawlen)

    if kind in ("trie", "tree"):
        index = _unpack_index(rd, raw, kind)
        dct = _unpack_dict(rd, index, index)
        return Container(kind, raw, p, index, dct)

    layered = LayeredIndex(raw, p)
    k = 1
    while k <= p:
        layered.layers[k] = LayerIndex(k, _unpack_index(rd, raw, "tree"))
        k *= 2
    k = 2
    while k <= p:
        layered.dicts[k] = _unpack_dict(rd, layered.layers[k].tree,
                                        layered.layers[k // 2].tree)
        k *= 2
    return Container(kind, raw, p, layered=layered)


def save_file(path: str, cont: Container) -> None:
    with open(path, "wb") as fh:
        fh.write(dump_container(cont))


def load_file(path: str) -> Container:
    with open(path, "rb") as fh:
        return load_container(fh.read())
