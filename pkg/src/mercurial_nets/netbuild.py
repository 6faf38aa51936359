"""Hashtag and word co-occurrence networks and their multi-layer assembly."""

from __future__ import annotations

import warnings
from collections import Counter, defaultdict
from collections.abc import Mapping
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, Sequence, TypeVar

from .ingest import MercurialWarning, ProcessedTweet

__all__ = [
    "HashtagNetwork",
    "MultiLayerNetwork",
    "Network",
    "WordNetwork",
    "assemble_multilayer",
    "build_hashtag_network",
    "build_word_network",
    "largest_component",
    "read_edge_list",
]

Edge = tuple[str, str]


def _edge(a: str, b: str) -> Edge:
    return (a, b) if a <= b else (b, a)


class Network:
    """Simple undirected, unweighted graph over string nodes.

    ``pair_counts`` keeps raw co-occurrence counts for diagnostics only; no
    metric reads it.
    """

    def __init__(self, nodes: Iterable[str] = (), edges: Iterable[Edge] = ()):
        self.adj: dict[str, set[str]] = {}
        self.pair_counts: Counter[Edge] = Counter()
        for n in nodes:
            self.add_node(n)
        for a, b in edges:
            self.add_edge(a, b)

    def add_node(self, node: str) -> None:
        self.adj.setdefault(node, set())

    def add_edge(self, a: str, b: str) -> None:
        if a == b:
            self.add_node(a)
            return
        self.adj.setdefault(a, set()).add(b)
        self.adj.setdefault(b, set()).add(a)
        self.pair_counts[_edge(a, b)] += 1

    @property
    def nodes(self) -> set[str]:
        return set(self.adj)

    @property
    def N(self) -> int:
        return len(self.adj)

    def number_of_edges(self) -> int:
        return sum(len(nb) for nb in self.adj.values()) // 2

    def edges(self) -> list[Edge]:
        """Edges as sorted ``(a, b)`` pairs with ``a < b``, in sorted order."""
        return sorted((a, b) for a, nb in self.adj.items() for b in nb if a < b)

    def has_edge(self, a: str, b: str) -> bool:
        return b in self.adj.get(a, ())

    def neighbors(self, node: str) -> set[str]:
        return self.adj[node]

    def subgraph(self, nodes: Iterable[str]):
        keep = set(nodes)
        sub = type(self)()
        for n in keep:
            sub.add_node(n)
            for m in self.adj[n]:
                if m in keep:
                    sub.adj[n].add(m)
        return sub

    def connected_components(self) -> list[set[str]]:
        seen: set[str] = set()
        comps = []
        for start in sorted(self.adj):
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                u = stack.pop()
                for v in self.adj[u]:
                    if v not in comp:
                        comp.add(v)
                        stack.append(v)
            seen |= comp
            comps.append(comp)
        return comps

    def write_edge_list(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for a, b in self.edges():
                fh.write(f"{a}\t{b}\n")

    def __eq__(self, other):
        if not isinstance(other, Network):
            return NotImplemented
        return self.adj == other.adj

    def __repr__(self):
        return f"{type(self).__name__}(N={self.N}, edges={self.number_of_edges()})"


class HashtagNetwork(Network):
    pass


class WordNetwork(Network):
    pass


NetT = TypeVar("NetT", bound=Network)


def read_edge_list(path: str | Path, cls: type[NetT] = Network) -> NetT:
    net = cls()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line:
                a, b = line.split("\t")
                net.add_edge(a, b)
    return net


def build_hashtag_network(tweets: Iterable[ProcessedTweet]) -> HashtagNetwork:
    """Link every pair of distinct hashtags appearing in the same tweet."""
    net = HashtagNetwork()
    for tw in tweets:
        tags = sorted(tw.hashtags)
        for t in tags:
            net.add_node(t)
        for a, b in combinations(tags, 2):
            net.add_edge(a, b)
    return net


def build_word_network(tweets: Iterable[ProcessedTweet]) -> WordNetwork:
    """Link consecutive stems inside each sentence."""
    net = WordNetwork()
    for tw in tweets:
        for sentence in tw.sentences:
            for s in sentence:
                net.add_node(s)
            for a, b in zip(sentence, sentence[1:]):
                net.add_edge(a, b)
    return net


def largest_component(net: NetT) -> NetT:
    """Largest connected component; ties go to the one holding the smallest node."""
    comps = net.connected_components()
    if not comps:
        return type(net)()
    best = min(comps, key=lambda c: (-len(c), min(c)))
    return net.subgraph(best)


class _EdgeWordNets(Mapping):
    """Lazy ``hashtag edge -> WordNetwork`` map.

    Word networks are built on first access from the tweets carrying both
    endpoint hashtags, then cached. Keys are exactly the hashtag-layer edges.
    """

    def __init__(self, hnet: HashtagNetwork, tweets: Sequence[ProcessedTweet]):
        self._hnet = hnet
        self._tweets = tweets
        self._by_tag: dict[str, list[int]] = defaultdict(list)
        for i, tw in enumerate(tweets):
            for t in tw.hashtags:
                self._by_tag[t].append(i)
        self._cache: dict[Edge, WordNetwork] = {}

    def tweets_for(self, a: str, b: str) -> list[ProcessedTweet]:
        other = set(self._by_tag.get(b, ()))
        return [self._tweets[i] for i in self._by_tag.get(a, ()) if i in other]

    def __getitem__(self, key: Edge) -> WordNetwork:
        a, b = key
        key = _edge(a, b)
        if not self._hnet.has_edge(a, b):
            raise KeyError(key)
        if key not in self._cache:
            self._cache[key] = build_word_network(self.tweets_for(*key))
        return self._cache[key]

    def __iter__(self) -> Iterator[Edge]:
        return iter(self._hnet.edges())

    def __len__(self) -> int:
        return self._hnet.number_of_edges()

    def __contains__(self, key) -> bool:
        try:
            a, b = key
        except (TypeError, ValueError):
            return False
        return self._hnet.has_edge(a, b)


class MultiLayerNetwork:
    def __init__(
        self,
        hashtag_layer: HashtagNetwork,
        edge_word_nets: Mapping[Edge, WordNetwork],
        focal_word_nets: dict[tuple[str, ...], WordNetwork],
    ):
        self.hashtag_layer = hashtag_layer
        self.edge_word_nets = edge_word_nets
        self.focal_word_nets = focal_word_nets


def _combo_key(combo: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted({c.lstrip("#").lower() for c in combo}))


def assemble_multilayer(
    tweets: Sequence[ProcessedTweet],
    hnet: HashtagNetwork,
    focal: Iterable[Iterable[str]] = (),
) -> MultiLayerNetwork:
    """Attach word networks to hashtag edges and to focal hashtag combinations.

    ``focal_word_nets`` is keyed by the sorted tuple of the combination's
    hashtags. A combination carried by no tweet yields an empty network and
    a warning.
    """
    tweets = list(tweets)
    focal_nets = {}
    for combo in focal:
        key = _combo_key(combo)
        members = [tw for tw in tweets if tw.hashtags.issuperset(key)]
        if not members:
            warnings.warn(f"no tweet carries all of {'+'.join(key)}", MercurialWarning)
        focal_nets[key] = build_word_network(members)
    return MultiLayerNetwork(hnet, _EdgeWordNets(hnet, tweets), focal_nets)
