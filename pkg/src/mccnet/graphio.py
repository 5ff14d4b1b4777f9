"""Graph serialization: GEXF (with optional viz positions), DOT, and JSON.

GEXF is also parsed back (the render subcommand accepts GEXF input).
"""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from pathlib import Path
from typing import Mapping

import numpy as np

from .errors import GraphParseError
from .graphs import Graph
from .network import Mccn

GEXF_NS = "http://www.gexf.net/1.2draft"
VIZ_NS = "http://www.gexf.net/1.2draft/viz"


def gexf_string(
    g: Graph,
    edge_weights: Mapping[tuple[int, int], float] | None = None,
    positions: np.ndarray | None = None,
    node_attrs: Mapping[int, Mapping[str, float | str]] | None = None,
) -> str:
    """GEXF 1.2, undirected, deterministic text output."""
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<gexf xmlns="{GEXF_NS}" xmlns:viz="{VIZ_NS}" version="1.2">',
        '  <graph defaultedgetype="undirected">',
    ]
    attr_names: list[str] = []
    if node_attrs:
        for attrs in node_attrs.values():
            for name in attrs:
                if name not in attr_names:
                    attr_names.append(name)
    if attr_names:
        lines.append('    <attributes class="node">')
        for idx, name in enumerate(attr_names):
            lines.append(f'      <attribute id="{idx}" title="{name}" type="string"/>')
        lines.append("    </attributes>")
    lines.append("    <nodes>")
    for v in range(g.n):
        parts = [f'      <node id="{v}" label="{v}"']
        body = []
        if node_attrs and v in node_attrs and node_attrs[v]:
            vals = []
            for idx, name in enumerate(attr_names):
                if name in node_attrs[v]:
                    value = node_attrs[v][name]
                    text = f"{value:.6f}" if isinstance(value, float) else str(value)
                    vals.append(f'          <attvalue for="{idx}" value="{text}"/>')
            if vals:
                body.append("        <attvalues>")
                body.extend(vals)
                body.append("        </attvalues>")
        if positions is not None:
            body.append(
                f'        <viz:position x="{positions[v, 0]:.6f}" y="{positions[v, 1]:.6f}" z="0.0"/>'
            )
        if body:
            lines.append(parts[0] + ">")
            lines.extend(body)
            lines.append("      </node>")
        else:
            lines.append(parts[0] + "/>")
    lines.append("    </nodes>")
    lines.append("    <edges>")
    for eid, (u, v) in enumerate(sorted(g.edges)):
        if edge_weights is not None and (u, v) in edge_weights:
            lines.append(
                f'      <edge id="{eid}" source="{u}" target="{v}" weight="{edge_weights[(u, v)]:.6f}"/>'
            )
        else:
            lines.append(f'      <edge id="{eid}" source="{u}" target="{v}"/>')
    lines.append("    </edges>")
    lines.append("  </graph>")
    lines.append("</gexf>")
    return "\n".join(lines) + "\n"


def parse_gexf(path: str | Path) -> Graph:
    """Read nodes and edges back from GEXF. Node ids may be arbitrary
    strings; they are relabeled 0..n-1 in document order."""
    try:
        tree = ET.parse(str(path))
    except ET.ParseError as exc:
        line, col = exc.position
        raise GraphParseError(f"{path}:{line}:{col}: {exc.msg}") from exc
    root = tree.getroot()

    def findall(elem, tag):
        return [child for child in elem.iter() if child.tag.split("}")[-1] == tag]

    node_elems = []
    for nodes in findall(root, "nodes"):
        node_elems.extend(e for e in nodes if e.tag.split("}")[-1] == "node")
    ids: dict[str, int] = {}
    for e in node_elems:
        nid = e.get("id")
        if nid is None:
            raise GraphParseError(f"{path}: node without id")
        if nid not in ids:
            ids[nid] = len(ids)
    g = Graph(n=len(ids))
    for edges in findall(root, "edges"):
        for e in edges:
            if e.tag.split("}")[-1] != "edge":
                continue
            src, dst = e.get("source"), e.get("target")
            if src not in ids or dst not in ids:
                raise GraphParseError(f"{path}: edge references unknown node {src!r} or {dst!r}")
            if ids[src] != ids[dst]:
                g.add_edge(ids[src], ids[dst])
    return g


def dot_string(g: Graph, edge_weights: Mapping[tuple[int, int], float] | None = None) -> str:
    lines = ["graph G {"]
    for v in range(g.n):
        lines.append(f"  {v};")
    for u, v in sorted(g.edges):
        if edge_weights is not None and (u, v) in edge_weights:
            lines.append(f'  {u} -- {v} [weight="{edge_weights[(u, v)]:.6f}"];')
        else:
            lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_json(
    g: Graph,
    edge_weights: Mapping[tuple[int, int], float] | None = None,
    extra: Mapping[str, object] | None = None,
) -> str:
    doc: dict = {"n": g.n, "nodes": [], "edges": []}
    payloads = g.payloads or {}
    for v in range(g.n):
        node: dict = {"id": v}
        payload = payloads.get(v)
        if payload is not None:
            node.update(payload if isinstance(payload, dict) else {})
        doc["nodes"].append(node)
    for u, v in sorted(g.edges):
        edge: dict = {"source": u, "target": v}
        if edge_weights is not None and (u, v) in edge_weights:
            edge["weight"] = round(edge_weights[(u, v)], 6)
        doc["edges"].append(edge)
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def parse_graph_json(path: str | Path) -> Graph:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise GraphParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    try:
        g = Graph(n=int(doc["n"]))
        for edge in doc["edges"]:
            g.add_edge(int(edge["source"]), int(edge["target"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphParseError(f"{path}: {exc}") from exc
    return g


def mccn_json(mccn: Mccn, include_vectors: bool = False) -> str:
    """JSON form of a correlation network: node id + start time (vector via
    flag), edges with similarity weight, plus the threshold."""
    weights = {e: float(mccn.similarities[e[0], e[1]]) for e in mccn.graph.edges}
    g = mccn.graph
    doc: dict = {"n": g.n, "threshold": round(mccn.threshold, 6), "nodes": [], "edges": []}
    for v in range(g.n):
        clip = (g.payloads or {}).get(v)
        node: dict = {"id": v}
        if clip is not None:
            node["start_time_s"] = round(clip.start_time_s, 6)
            if include_vectors:
                node["vector"] = [round(float(x), 6) for x in clip.vector]
        doc["nodes"].append(node)
    for u, v in sorted(g.edges):
        doc["edges"].append({"source": u, "target": v, "weight": round(weights[(u, v)], 6)})
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def mccn_gexf(mccn: Mccn, positions: np.ndarray | None = None) -> str:
    weights = {e: float(mccn.similarities[e[0], e[1]]) for e in mccn.graph.edges}
    node_attrs = {}
    for v in range(mccn.graph.n):
        clip = (mccn.graph.payloads or {}).get(v)
        if clip is not None:
            node_attrs[v] = {"start_time_s": float(clip.start_time_s)}
    return gexf_string(mccn.graph, edge_weights=weights, positions=positions, node_attrs=node_attrs)
