from __future__ import annotations

from pydantic import BaseModel


def _scalar(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "-"
    return str(value)


class PlainTextFormatter:
    """Indented, human readable rendering of a report model."""

    @staticmethod
    def format(report: BaseModel, title: str) -> str:
        lines = [title, "=" * len(title)]
        PlainTextFormatter._emit(lines, report.model_dump(), 0)
        return "\n".join(lines) + "\n"

    @staticmethod
    def _emit(lines: list[str], data: dict, depth: int) -> None:
        pad = "  " * depth
        for key, value in data.items():
            if isinstance(value, dict):
                if not value:
                    lines.append(f"{pad}{key}: -")
                    continue
                lines.append(f"{pad}{key}:")
                PlainTextFormatter._emit(lines, value, depth + 1)
            elif isinstance(value, list):
                if not value:
                    lines.append(f"{pad}{key}: -")
                    continue
                lines.append(f"{pad}{key}:")
                for item in value:
                    if isinstance(item, dict):
                        first = True
                        for k, v in item.items():
                            marker = "- " if first else "  "
                            first = False
                            if isinstance(v, (dict, list)):
                                lines.append(f"{pad}  {marker}{k}:")
                                PlainTextFormatter._emit_value(lines, v, depth + 3)
                            else:
                                lines.append(f"{pad}  {marker}{k}: {_scalar(v)}")
                    elif isinstance(item, list):
                        lines.append(f"{pad}  - " + ", ".join(_scalar(x) for x in item))
                    else:
                        lines.append(f"{pad}  - {_scalar(item)}")
            else:
                lines.append(f"{pad}{key}: {_scalar(value)}")

    @staticmethod
    def _emit_value(lines: list[str], value, depth: int) -> None:
        pad = "  " * depth
        if isinstance(value, dict):
            PlainTextFormatter._emit(lines, value, depth)
        else:
            lines += [f"{pad}- {_scalar(v)}" for v in value]


class MachineFormatter:
    """``key=value`` lines; nested keys are dotted, list items indexed from 0."""

    @staticmethod
    def format(report: BaseModel, title: str) -> str:
        lines = [f"report={title}"]
        MachineFormatter._flatten(lines, "", report.model_dump())
        return "\n".join(lines) + "\n"

    @staticmethod
    def _flatten(lines: list[str], prefix: str, value) -> None:
        if isinstance(value, dict):
            for k, v in value.items():
                MachineFormatter._flatten(lines, f"{prefix}{k}.", v)
        elif isinstance(value, list):
            lines.append(f"{prefix}count={len(value)}")
            for i, v in enumerate(value):
                MachineFormatter._flatten(lines, f"{prefix}{i}.", v)
        else:
            lines.append(f"{prefix.rstrip('.')}={_scalar(value)}")


def render(report: BaseModel, title: str, fmt: str) -> str:
    if fmt == "machine":
        return MachineFormatter.format(report, title)
    return PlainTextFormatter.format(report, title)
