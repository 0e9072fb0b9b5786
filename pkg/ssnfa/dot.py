from padded_logic.guards import show_guard
from ssnfa.automaton import SsNfa


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(m: SsNfa, name: str = "ssnfa") -> str:
    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;"]
    for state in m.states:
        shape = "doublecircle" if state in m.final else "circle"
        lines.append(f"  {_quote(state)} [shape={shape}];")
    for i, state in enumerate(sorted(m.initial)):
        lines.append(f"  {_quote(f'__start{i}')} [shape=point];")
        lines.append(f"  {_quote(f'__start{i}')} -> {_quote(state)};")
    for t in m.transitions:
        lines.append(f"  {_quote(t.source)} -> {_quote(t.target)} [label={_quote(show_guard(t.guard))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
