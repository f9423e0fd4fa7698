"""Operation pipelines: ``op switch e=3 | op unzip e=5 | reduce``.

Each stage is one node visit in a small langgraph loop; the state carries the
current element and the index of the next stage.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import TypedDict

from langgraph.graph import END, StateGraph

from src.errors import ParseError
from src.graph_ops import operations as ops
from src.graph_ops.element import GradedElement

logger = logging.getLogger(__name__)

_OPS: dict[str, tuple[str, ...]] = {
    "switch": ("e",),
    "delete": ("e",),
    "unzip": ("e",),
    "dotted_unzip": ("e",),
    "cancel": ("d", "a"),
    "connect": ("e", "f", "with"),
    "sweep": ("tree",),
}


@dataclass(frozen=True)
class Stage:
    name: str
    args: dict[str, str] = field(default_factory=dict)

    def __str__(self) -> str:
        if self.name == "reduce":
            return "reduce"
        return " ".join(["op", self.name] + [f"{k}={v}" for k, v in sorted(self.args.items())])


def parse_pipeline(text: str, *, source: str | None = None) -> list[Stage]:
    stages = []
    for raw in text.replace("\n", "|").split("|"):
        words = raw.split()
        if not words:
            continue
        if words == ["reduce"]:
            stages.append(Stage("reduce"))
            continue
        if words[0] != "op" or len(words) < 2:
            raise ParseError(f"expected 'op <name> key=value ...' or 'reduce', got {raw.strip()!r}", source=source)
        name = words[1]
        if name not in _OPS:
            raise ParseError(f"unknown operation {name!r}; known: {', '.join(sorted(_OPS))}", source=source)
        args = {}
        for token in words[2:]:
            key, sep, value = token.partition("=")
            if not sep or not value:
                raise ParseError(f"bad argument {token!r} for {name}, expected key=value", source=source)
            args[key] = value
        missing = [k for k in _OPS[name] if k not in args]
        if missing:
            raise ParseError(f"operation {name} needs {', '.join(k + '=' for k in missing)}", source=source)
        stages.append(Stage(name, args))
    for i, st in enumerate(stages[:-1]):
        if st.name == "sweep" and any(later.name != "reduce" for later in stages[i + 1:]):
            raise ParseError("sweep must be the last operation of a pipeline", source=source)
    return stages


def apply_stage(stage: Stage, value: GradedElement):
    """Apply one stage; ``sweep`` returns a Series, every other stage a GradedElement."""
    if stage.name == "reduce":
        return value.reduced()
    a = stage.args
    v = value.value
    if stage.name == "switch":
        out = ops.switch(a["e"], v)
    elif stage.name == "delete":
        out = ops.delete(a["e"], v)
    elif stage.name == "unzip":
        out = ops.unzip(a["e"], v)
    elif stage.name == "dotted_unzip":
        out = ops.dotted_unzip(a["e"], v)
    elif stage.name == "cancel":
        out = ops.cancel(a["d"], a["a"], v)
    elif stage.name == "connect":
        other = GradedElement.load(a["with"])
        out = ops.connect(a["e"], a["f"], v, other.value)
    else:
        from src.graph_ops.sweep import sweep

        tree = [t for t in a["tree"].split(",") if t]
        return sweep(v, tree, max_degree=value.max_degree)
    return value.with_value(out)


class PipelineState(TypedDict, total=False):
    stages: list[Stage]
    index: int
    element: object


def build_pipeline_graph() -> StateGraph:
    g = StateGraph(PipelineState)

    def stage_node(state: PipelineState) -> PipelineState:
        i = state.get("index", 0)
        stage = state["stages"][i]
        logger.info("stage %d: %s", i + 1, stage)
        value = state["element"]
        if stage.name == "reduce" and not isinstance(value, GradedElement):
            # a swept Series is already reduced
            return {"index": i + 1}
        return {"element": apply_stage(stage, value), "index": i + 1}

    g.add_node("stage", stage_node)

    def _route_entry(state: PipelineState) -> str:
        return "stage" if state.get("stages") else END

    def _route_after_stage(state: PipelineState) -> str:
        if state.get("index", 0) < len(state["stages"]):
            return "stage"
        return END

    g.add_node("start", lambda state: {"index": 0})
    g.set_entry_point("start")
    g.add_conditional_edges("start", _route_entry)
    g.add_conditional_edges("stage", _route_after_stage)
    return g


def run_pipeline(*, element: GradedElement, stages: list[Stage]):
    graph = build_pipeline_graph().compile()
    final = graph.invoke(
        {"element": element, "stages": stages, "index": 0},
        config={"recursion_limit": 2 * len(stages) + 10},
    )
    return final["element"]
