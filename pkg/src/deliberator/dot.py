"""DOT rendering of dialectic traces, one cluster per maximal argument.

Follows the figure conventions of the source notation: inference arrows
point up, evidence sits beneath the rules that consume it, a defeating
attack carries an oversized arrowhead, mutual interference is a dashed
double-headed edge, and justified conclusions are drawn bold.  Output is
byte-stable for identical traces.
"""

from __future__ import annotations

from .core import Literal
from .engine import EdgeKind, Label, Trace


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(trace: Trace) -> str:
    """Render the trace's maximal-argument view as a DOT digraph."""
    view = trace.display_view()
    ids = trace.argument_ids()
    order = {a: i for i, a in enumerate(view.clusters)}
    lines: list[str] = []
    lines.append("digraph dialectic {")
    lines.append("  rankdir=BT;")
    lines.append("  compound=true;")
    lines.append('  node [shape=box, fontname="Helvetica", fontsize=10];')
    lines.append('  edge [fontname="Helvetica", fontsize=9];')
    lines.append(f"  label={_quote('goal: ' + str(trace.goal) + '  [' + trace.verdict.value + ']')};")
    lines.append("  labelloc=t;")

    node_names: dict[tuple[int, str], str] = {}

    def node_for(cluster_idx: int, lit: Literal) -> str:
        key = (cluster_idx, str(lit))
        if key not in node_names:
            node_names[key] = f"c{cluster_idx}_n{len([k for k in node_names if k[0] == cluster_idx])}"
        return node_names[key]

    for arg in view.clusters:
        idx = order[arg]
        label = trace.label_of(arg)
        arg_id = ids.get(arg, f"X{idx}")
        lines.append(f"  subgraph cluster_{idx} {{")
        lines.append(f"    label={_quote(f'{arg_id}  {str(arg.conclusion)}  [{label.value}]')};")
        if label is Label.DEFEATED:
            lines.append("    style=filled;")
            lines.append('    fillcolor="#eeeeee";')
        elif label is Label.UNDECIDED:
            lines.append("    style=dashed;")
        nodes = sorted(arg.nodes(), key=lambda n: (len(n.support), str(n.conclusion)))
        internal_edges: list[str] = []
        for node in nodes:
            name = node_for(idx, node.conclusion)
            attrs = [f"label={_quote(str(node.conclusion))}"]
            if node.top_rule is None:
                attrs.append("shape=plaintext")
            if node.conclusion == arg.conclusion and label is Label.UNDEFEATED and node.support:
                attrs.append("style=bold")
                attrs.append("penwidth=2.2")
            lines.append(f"    {name} [{', '.join(attrs)}];")
            if node.top_rule is not None:
                for premise in sorted(node.premises, key=lambda p: str(p.conclusion)):
                    src = node_for(idx, premise.conclusion)
                    internal_edges.append(
                        f"    {src} -> {name} [arrowsize=0.6, color=\"#666666\"];"
                    )
        lines.extend(sorted(set(internal_edges)))
        lines.append("  }")

    attack_lines: list[str] = []
    for edge in view.edges:
        src_idx = order[edge.attacker]
        tgt_idx = order[edge.target]
        src = node_for(src_idx, edge.source_literal)
        tgt = node_for(tgt_idx, edge.point)
        if edge.kind is EdgeKind.DEFEAT:
            attrs = 'arrowsize=1.6, penwidth=1.8, color="#aa0000", label="defeats"'
        else:
            attrs = 'style=dashed, color="#555555", label="interferes"'
            if edge.bidirectional:
                attrs += ", dir=both"
        attack_lines.append(f"  {src} -> {tgt} [{attrs}];")
    lines.extend(sorted(attack_lines))
    lines.append("}")
    return "\n".join(lines) + "\n"
