"""Skeletons of quotient graphs and the involutions induced on them.

Three shapes are built:

* elliptic (one center vertex ``c`` carrying all features): a cuspidal ray
  with a ``GL2`` spike for each 2-torsion cusp, a fork with two prongs for
  each inverse pair of other cusps, and an ``Fq2star`` pendant for each
  pair ``{P, -P}`` of elliptic points with ``P != -P``;
* the doubly infinite line of the genus-0, degree-2 case;
* the single ray of ``GL_2(F_q[t])``.

Infinite rays are cut after ``depth`` vertices; the last vertex carries
``truncated=True``.  Only the feature inventory is claimed, not the shape of
the finite part.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from .actions import act_on_cusp, act_on_pair, pair_label, partition_elliptic
from .classtower import ClassGroupData
from .curve import CurvePoint, parse_point
from .errors import InvariantViolation, MathPreconditionError

__all__ = [
    "SCHEMA",
    "QuotientSkeleton",
    "InvolutionReport",
    "build_elliptic_skeleton",
    "build_rational_line",
    "build_nagao_ray",
    "induced_automorphism",
    "line_involution",
    "label_preserving_automorphisms",
    "emit",
    "emit_dot",
    "emit_json",
    "parse_json",
]

SCHEMA = "quotgraph/1"
X_MINIMAL = "skeleton (feature-faithful, X-minimal)"


@dataclass
class QuotientSkeleton:
    kind: str
    title: str
    depth: int
    vertices: Dict[str, dict] = field(default_factory=dict)
    edges: List[Tuple[str, str]] = field(default_factory=list)
    meta: dict = field(default_factory=dict)
    data: Optional[ClassGroupData] = field(default=None, repr=False, compare=False)

    def add_vertex(self, vid: str, *, label: str = "", stab: str, feature: str, tag: str = "",
                   pos: int = 0, truncated: bool = False, order: Optional[int] = None):
        if vid in self.vertices:
            raise InvariantViolation(f"duplicate vertex {vid}")
        self.vertices[vid] = {"label": label, "stab": stab, "feature": feature, "tag": tag,
                              "pos": pos, "truncated": truncated, "order": order}

    def add_edge(self, u: str, v: str):
        self.edges.append((u, v))

    def graph(self) -> nx.Graph:
        G = nx.Graph()
        for vid, attrs in self.vertices.items():
            G.add_node(vid, **attrs)
        G.add_edges_from(self.edges)
        return G

    def is_tree(self) -> bool:
        return nx.is_tree(self.graph())

    def ends(self) -> List[str]:
        return [v for v, a in self.vertices.items() if a["truncated"]]

    def with_stab(self, stab: str) -> List[str]:
        return [v for v, a in self.vertices.items() if a["stab"] == stab]

    def features(self) -> List[tuple]:
        """``(feature, tag)`` for every spike, ray, fork, prong and pendant."""
        seen = []
        for a in self.vertices.values():
            key = (a["feature"], a["tag"])
            if a["feature"] not in ("center", "line") and key not in seen:
                seen.append(key)
        return seen


def _ray_ids(tag: str, depth: int) -> List[str]:
    return [f"ray[{tag}]/{j}" for j in range(1, depth + 1)]


def build_elliptic_skeleton(data: ClassGroupData, depth: int = 3,
                            figure_compat: bool = False) -> QuotientSkeleton:
    """Feature graph of the quotient for an elliptic ``A``.

    With ``figure_compat`` each spike hangs on the second ray vertex, as
    in the shipped DOT fixtures; otherwise it hangs on the root.
    """
    if depth < 1 or (figure_compat and depth < 2):
        raise MathPreconditionError("depth too small for the requested layout")
    sk = QuotientSkeleton("elliptic", X_MINIMAL, depth,
                          meta={"curve": data.curve.label(), "q": data.q,
                                "figure_compat": figure_compat},
                          data=data)
    sk.add_vertex("c", label="c", stab="center", feature="center")
    for P in data.quinn:
        tag = str(P)
        ids = _ray_ids(tag, depth)
        for j, vid in enumerate(ids, start=1):
            sk.add_vertex(vid, label=_x_label(P) if j == 1 else "", stab=f"ray:{j}",
                          feature="ray", tag=tag, pos=j, truncated=j == depth)
        sk.add_edge("c", ids[0])
        for u, v in zip(ids, ids[1:]):
            sk.add_edge(u, v)
        spike = f"gl2[{tag}]"
        sk.add_vertex(spike, label=f"g{_x_label(P)}", stab="GL2", feature="spike", tag=tag)
        sk.add_edge(ids[1] if figure_compat else ids[0], spike)
    done = set()
    for P in data.base:
        if P in done or P == -P:
            continue
        done.update((P, -P))
        fork = f"fork[{_x_label(P)}]"
        sk.add_vertex(fork, label=_x_label(P), stab="fork", feature="fork", tag=_x_label(P))
        sk.add_edge("c", fork)
        for c in sorted((P, -P)):
            tag = str(c)
            ids = [f"prong[{tag}]/{j}" for j in range(1, depth + 1)]
            for j, vid in enumerate(ids, start=1):
                sk.add_vertex(vid, stab=f"ray:{j}", feature="prong", tag=tag, pos=j,
                              truncated=j == depth)
            sk.add_edge(fork, ids[0])
            for u, v in zip(ids, ids[1:]):
                sk.add_edge(u, v)
    for pair in partition_elliptic(data).pairs:
        lab = pair_label(pair)
        sk.add_vertex(f"ell[{lab}]", label=lab, stab="Fq2star", feature="pendant", tag=lab)
        sk.add_edge("c", f"ell[{lab}]")
    _check_elliptic(sk, data)
    return sk


def _x_label(P: CurvePoint) -> str:
    return "∞" if P.is_infinity else str(P.x)


def _check_elliptic(sk: QuotientSkeleton, data: ClassGroupData):
    G = sk.graph()
    if not nx.is_tree(G):
        raise InvariantViolation("skeleton is not a tree")
    if len(sk.ends()) != data.base.order:
        raise InvariantViolation("ends do not match the class group")
    if len(sk.with_stab("GL2")) != len(data.quinn):
        raise InvariantViolation("spike count differs from |quinn|")
    for v in sk.with_stab("GL2") + sk.with_stab("Fq2star"):
        if G.degree(v) != 1:
            raise InvariantViolation(f"isolated vertex {v} has degree {G.degree(v)}")


def gl2_order(q: int) -> int:
    return (q * q - 1) * (q * q - q)


def build_rational_line(q: int, depth: int = 2) -> QuotientSkeleton:
    """The line ``... v2 - v1 - v0 - v0* - v1* - v2* ...`` for δ = 2.

    ``G_{v_0} = GL_2(F_q)``; for ``i >= 1`` the stabilizer consists of upper
    triangular matrices with diagonal in ``F_q^*`` and corner ``c pi^-i``,
    ``deg c <= 2i``, of order ``(q-1)^2 q^(2i+1)``.
    """
    sk = QuotientSkeleton("line", "doubly infinite line (genus 0, degree 2)", depth,
                          meta={"q": q, "delta": 2})
    for side, suffix in (("v", ""), ("v*", "*")):
        for i in range(depth + 1):
            order = gl2_order(q) if i == 0 else (q - 1) ** 2 * q ** (2 * i + 1)
            sk.add_vertex(f"v{i}{suffix}", label=f"v{i}{suffix}",
                          stab="GL2" if i == 0 else f"line:{i}", feature="line", tag=side,
                          pos=i, truncated=i == depth, order=order)
    for suffix in ("", "*"):
        for i in range(depth):
            sk.add_edge(f"v{i}{suffix}", f"v{i + 1}{suffix}")
    sk.add_edge("v0", "v0*")
    return sk


def build_nagao_ray(q: int, depth: int = 3) -> QuotientSkeleton:
    """The ray of ``GL_2(F_q[t])``; its terminal vertex has stabilizer ``GL_2(F_q)``."""
    sk = QuotientSkeleton("nagao", "cuspidal ray (polynomial ring)", depth, meta={"q": q, "delta": 1})
    for i in range(depth + 1):
        order = gl2_order(q) if i == 0 else (q - 1) ** 2 * q ** (i + 1)
        sk.add_vertex(f"v{i}", label=f"v{i}", stab="GL2" if i == 0 else f"ray:{i}",
                      feature="ray", tag="nagao", pos=i, truncated=i == depth, order=order)
    for i in range(depth):
        sk.add_edge(f"v{i}", f"v{i + 1}")
    return sk


# ---------------------------------------------------------------------------
# involutions

@dataclass(frozen=True)
class InvolutionReport:
    permutation: dict
    is_automorphism: bool
    order: int
    preserves_labels: bool
    fixed_vertices: tuple
    swapped_feature_pairs: tuple
    fixed_features: tuple
    inverted_edges: tuple

    def to_json(self) -> dict:
        return {
            "permutation": dict(self.permutation),
            "is_automorphism": self.is_automorphism,
            "order": self.order,
            "preserves_labels": self.preserves_labels,
            "fixed_vertices": list(self.fixed_vertices),
            "swapped_feature_pairs": [[list(a), list(b)] for a, b in self.swapped_feature_pairs],
            "fixed_features": [list(f) for f in self.fixed_features],
            "inverted_edges": [list(e) for e in self.inverted_edges],
        }


def _perm_order(perm: dict) -> int:
    n, cur = 1, dict(perm)
    while any(cur[v] != v for v in cur):
        cur = {v: perm[cur[v]] for v in cur}
        n += 1
        if n > len(perm) + 1:
            raise InvariantViolation("permutation has no finite order")
    return n


def _report(sk: QuotientSkeleton, perm: dict) -> InvolutionReport:
    if sorted(perm) != sorted(sk.vertices) or sorted(perm.values()) != sorted(sk.vertices):
        raise InvariantViolation("map is not a permutation of the vertices")
    edges = {frozenset(e) for e in sk.edges}
    is_auto = {frozenset((perm[u], perm[v])) for u, v in sk.edges} == edges
    labels_ok = all(sk.vertices[v]["stab"] == sk.vertices[perm[v]]["stab"] for v in perm)
    fmap = {}
    for v, a in sk.vertices.items():
        b = sk.vertices[perm[v]]
        if a["feature"] not in ("center", "line"):
            fmap[(a["feature"], a["tag"])] = (b["feature"], b["tag"])
    swapped = tuple(sorted((k, w) for k, w in fmap.items() if k < w and fmap.get(w) == k))
    fixed_f = tuple(sorted(k for k, w in fmap.items() if k == w))
    inverted = tuple(sorted(tuple(sorted((u, v))) for u, v in sk.edges
                            if perm[u] == v and perm[v] == u))
    return InvolutionReport(
        permutation=perm,
        is_automorphism=is_auto,
        order=_perm_order(perm),
        preserves_labels=labels_ok,
        fixed_vertices=tuple(v for v in sk.vertices if perm[v] == v),
        swapped_feature_pairs=swapped,
        fixed_features=fixed_f,
        inverted_edges=inverted,
    )


def induced_automorphism(sk: QuotientSkeleton, kappa: CurvePoint) -> InvolutionReport:
    """Vertex permutation induced by the 2-torsion class ``kappa``.

    Rays, spikes and prongs follow ``c -> kappa + c``; pendants follow the
    action on elliptic pairs; ``c`` is fixed.
    """
    if sk.kind != "elliptic" or sk.data is None:
        raise MathPreconditionError("induced automorphisms need an elliptic skeleton with its data")
    data = sk.data
    if kappa not in data.quinn:
        raise MathPreconditionError(f"{kappa} is not a 2-torsion class")
    curve = data.curve
    pairs = {pair_label(p): p for p in partition_elliptic(data).pairs}

    def cusp_image(tag: str) -> str:
        return str(act_on_cusp(kappa, parse_point(curve, tag, curve.field)))

    perm = {}
    for vid, a in sk.vertices.items():
        feat = a["feature"]
        if feat == "center":
            perm[vid] = vid
        elif feat == "ray":
            perm[vid] = f"ray[{cusp_image(a['tag'])}]/{a['pos']}"
        elif feat == "spike":
            perm[vid] = f"gl2[{cusp_image(a['tag'])}]"
        elif feat == "prong":
            perm[vid] = f"prong[{cusp_image(a['tag'])}]/{a['pos']}"
        elif feat == "fork":
            rep = next(P for P in data.base if _x_label(P) == a["tag"])
            perm[vid] = f"fork[{_x_label(act_on_cusp(kappa, rep))}]"
        elif feat == "pendant":
            perm[vid] = f"ell[{pair_label(act_on_pair(kappa, pairs[a['tag']]))}]"
        else:
            raise InvariantViolation(f"unknown feature {feat}")
    rep = _report(sk, perm)
    if not (rep.is_automorphism and rep.preserves_labels and rep.order in (1, 2)):
        raise InvariantViolation(f"{kappa} does not induce a stabilizer invariant involution")
    if (rep.order == 1) != kappa.is_infinity:
        raise InvariantViolation("nontrivial class induced the identity")
    if not kappa.is_infinity and any(f[0] == "ray" for f in rep.fixed_features):
        raise InvariantViolation("a nontrivial class fixed a 2-torsion end")
    return rep


def line_involution(sk: QuotientSkeleton) -> InvolutionReport:
    """``v_i <-> v_i*`` on the degree-2 line."""
    if sk.kind != "line":
        raise MathPreconditionError("not a line skeleton")
    perm = {}
    for vid in sk.vertices:
        perm[vid] = vid[:-1] if vid.endswith("*") else vid + "*"
    return _report(sk, perm)


def label_preserving_automorphisms(sk: QuotientSkeleton) -> List[dict]:
    """All graph automorphisms preserving ``stab`` and ``truncated``."""
    G = sk.graph()

    def same(a, b):
        return a["stab"] == b["stab"] and a["truncated"] == b["truncated"]

    return [dict(m) for m in GraphMatcher(G, G, node_match=same).isomorphisms_iter()]


# ---------------------------------------------------------------------------
# emission

def _dot_quote(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(sk: QuotientSkeleton, involution: Optional[InvolutionReport] = None) -> str:
    lines = [f"graph {_dot_quote(sk.kind)} {{", f"  // {sk.title}"]
    for k in sorted(sk.meta):
        lines.append(f"  // {k} = {sk.meta[k]}")
    for vid, a in sk.vertices.items():
        attrs = [("label", a["label"]), ("stab", a["stab"]), ("feature", a["feature"])]
        if a["tag"]:
            attrs.append(("tag", a["tag"]))
        if a["order"] is not None:
            attrs.append(("order", a["order"]))
        if a["truncated"]:
            attrs.append(("truncated", "true"))
        if involution is not None:
            attrs.append(("mate", involution.permutation[vid]))
        body = ", ".join(f"{k}={_dot_quote(v)}" for k, v in attrs)
        lines.append(f"  {_dot_quote(vid)} [{body}];")
    for u, v in sk.edges:
        lines.append(f"  {_dot_quote(u)} -- {_dot_quote(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_json(sk: QuotientSkeleton, involution: Optional[InvolutionReport] = None) -> str:
    doc = {
        "schema": SCHEMA,
        "kind": sk.kind,
        "title": sk.title,
        "depth": sk.depth,
        "meta": sk.meta,
        "vertices": [dict(id=vid, **a) for vid, a in sk.vertices.items()],
        "edges": [list(e) for e in sk.edges],
    }
    if involution is not None:
        doc["involution"] = involution.to_json()
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def emit(sk: QuotientSkeleton, fmt: str = "dot", involution: Optional[InvolutionReport] = None) -> str:
    if fmt == "dot":
        return emit_dot(sk, involution)
    if fmt == "json":
        return emit_json(sk, involution)
    raise ValueError(f"unknown format {fmt!r}")


def parse_json(text: str) -> QuotientSkeleton:
    doc = json.loads(text)
    if doc.get("schema") != SCHEMA:
        raise ValueError(f"unsupported schema {doc.get('schema')!r}")
    sk = QuotientSkeleton(doc["kind"], doc["title"], doc["depth"], meta=doc["meta"])
    for v in doc["vertices"]:
        v = dict(v)
        sk.vertices[v.pop("id")] = v
    sk.edges = [tuple(e) for e in doc["edges"]]
    return sk
