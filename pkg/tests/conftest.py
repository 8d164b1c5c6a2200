"""Shared fixtures: the ABRACADABRA reference indexes and naive oracles."""

from __future__ import annotations

import random

import pytest

from parsuffix import (build_ancestry, build_layered_index, build_suffix_tree,
                       build_suffix_trie, build_tree_halving_dict,
                       build_trie_halving_dict, make_text)

ABRA = b"ABRACADABRA"


def naive_positions(raw: bytes, pat: bytes) -> tuple[int, ...]:
    """All 1-based occurrence positions, overlapping included."""
    m = len(pat)
    return tuple(i + 1 for i in range(len(raw) - m + 1)
                 if raw[i:i + m] == pat)


def distinct_substrings(symbols) -> set:
    """Brute-force set of all nonempty substrings of a symbol sequence."""
    seq = tuple(symbols)
    return {seq[i:j] for i in range(len(seq))
            for j in range(i + 1, len(seq) + 1)}


def random_text(rng: random.Random, n: int, sigma: int) -> bytes:
    return bytes(rng.randrange(97, 97 + sigma) for _ in range(n))


@pytest.fixture(scope="session")
def abra_text():
    return make_text(ABRA, 1)


@pytest.fixture(scope="session")
def abra_tree(abra_text):
    return build_suffix_tree(abra_text)


@pytest.fixture(scope="session")
def abra_trie(abra_text):
    return build_suffix_trie(abra_text)


@pytest.fixture(scope="session")
def abra_tree_dict(abra_tree):
    return build_tree_halving_dict(abra_tree)


@pytest.fixture(scope="session")
def abra_trie_dict(abra_trie):
    return build_trie_halving_dict(abra_trie)


@pytest.fixture(scope="session")
def abra_anc(abra_tree):
    return build_ancestry(abra_tree)


@pytest.fixture(scope="session")
def abra_layers():
    return build_layered_index(ABRA, 8)
