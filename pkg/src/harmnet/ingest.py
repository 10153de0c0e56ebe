"""File formats, rating conversion, indicator harms and the trade pipeline.

Tabular inputs are UTF-8 CSV with a required header row; lines starting with
`#` are comments and ignored everywhere (which is also how run manifests are
embedded into CSV outputs). Schemas:

* nodes:      label,harm[,name]
* edges:      src,dst
* indicators: entity,indicator,value           (long form)
* spec:       indicator,higher_is_better
* trade:      origin,dest,sector,year,value_usd
* aliases:    label,code                       (entity resolution map)
* JSON graph: {"nodes": [{"id", "label", "harm"}], "edges": [[src, dst]]}
"""

from __future__ import annotations

import csv
import io
import json
import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import (
    ConstraintViolation,
    DegenerateIndicator,
    GraphError,
    MissingIndicator,
    OutOfScale,
    ParseError,
    UnknownGrade,
    UnmappedLabels,
)
from .graph import HARM_MAX, HARM_MIN, HarmGraph, build_graph

_ISO3 = re.compile(r"^[A-Z]{3}$")


# --- low-level CSV helpers -------------------------------------------------


def _read_rows(path: str | Path) -> tuple[list[str], list[tuple[int, list[str]]]]:
    """(header, [(lineno, fields), ...]) skipping comments and blank lines."""
    header: list[str] | None = None
    rows: list[tuple[int, list[str]]] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = next(csv.reader(io.StringIO(line)))
            fields = [f.strip() for f in fields]
            if header is None:
                header = [f.lower() for f in fields]
            else:
                rows.append((lineno, fields))
    if header is None:
        raise ParseError(1, 1, f"{path}: no header row found")
    return header, rows


def _columns(
    header: list[str], required: Sequence[str], optional: Sequence[str] = ()
) -> dict[str, int]:
    cols = {}
    for name in required:
        if name not in header:
            raise ParseError(1, 1, f"missing required column {name!r}")
        cols[name] = header.index(name)
    for name in optional:
        if name in header:
            cols[name] = header.index(name)
    return cols


def _field(fields: list[str], idx: int, lineno: int, colname: str) -> str:
    if idx >= len(fields):
        raise ParseError(lineno, idx + 1, f"row too short, missing {colname!r}")
    return fields[idx]


def _parse_float(text: str, lineno: int, column: int, what: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ParseError(lineno, column, f"{what} {text!r} is not a number") from None
    if math.isnan(value) or math.isinf(value):
        raise ParseError(lineno, column, f"{what} {text!r} is not finite")
    return value


def _parse_bool(text: str, lineno: int, column: int) -> bool:
    t = text.strip().lower()
    if t in ("true", "1", "yes", "y"):
        return True
    if t in ("false", "0", "no", "n"):
        return False
    raise ParseError(lineno, column, f"expected a boolean, got {text!r}")


# --- graph tables ----------------------------------------------------------


def load_alias_map(path: str | Path) -> dict[str, str]:
    header, rows = _read_rows(path)
    cols = _columns(header, ["label", "code"])
    aliases = {}
    for lineno, fields in rows:
        label = _field(fields, cols["label"], lineno, "label")
        code = _field(fields, cols["code"], lineno, "code")
        aliases[label] = code
    return aliases


def load_graph(
    node_file: str | Path,
    edge_file: str | Path,
    aliases: Mapping[str, str] | None = None,
) -> HarmGraph:
    """Build a HarmGraph from a node table and an edge table.

    Parse failures carry the 1-based line and field position; structural
    violations (duplicates, unknown endpoints, self-loops, harm range) are
    reported with the offending line.
    """
    aliases = aliases or {}
    header, rows = _read_rows(node_file)
    cols = _columns(header, ["label", "harm"], optional=["name"])
    nodes: list[tuple[str, float, str | None]] = []
    node_lines: dict[str, int] = {}
    for lineno, fields in rows:
        label = _field(fields, cols["label"], lineno, "label")
        label = aliases.get(label, label)
        if not label:
            raise ParseError(lineno, cols["label"] + 1, "empty node label")
        harm = _parse_float(
            _field(fields, cols["harm"], lineno, "harm"),
            lineno,
            cols["harm"] + 1,
            "harm",
        )
        name = fields[cols["name"]] if "name" in cols and cols["name"] < len(fields) else None
        if label in node_lines:
            raise ConstraintViolation(
                f"duplicate node label {label!r} (first seen on line {node_lines[label]})",
                line=lineno,
            )
        node_lines[label] = lineno
        nodes.append((label, harm, name or None))

    eheader, erows = _read_rows(edge_file)
    ecols = _columns(eheader, ["src", "dst"])
    edges: list[tuple[str, str, int]] = []
    for lineno, fields in erows:
        raw_src = _field(fields, ecols["src"], lineno, "src")
        raw_dst = _field(fields, ecols["dst"], lineno, "dst")
        edges.append((aliases.get(raw_src, raw_src), aliases.get(raw_dst, raw_dst), lineno))

    try:
        return build_graph(
            [(lab, harm, name) for lab, harm, name in nodes],
            [(s, d) for s, d, _ in edges],
        )
    except GraphError as e:
        raise ConstraintViolation(str(e)) from e


def save_graph(
    g: HarmGraph,
    node_path: str | Path,
    edge_path: str | Path,
    comments: Iterable[str] = (),
) -> None:
    comment_lines = "".join(f"# {c}\n" for c in comments)
    with open(node_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(comment_lines)
        writer = csv.writer(fh, lineterminator="\n")
        has_names = any(n for n in g.names)
        writer.writerow(["label", "harm", "name"] if has_names else ["label", "harm"])
        for label, harm, name in g.node_rows():
            row = [label, canonical_float(harm)]
            if has_names:
                row.append(name or "")
            writer.writerow(row)
    with open(edge_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(comment_lines)
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["src", "dst"])
        for src, dst in g.edge_rows():
            writer.writerow([src, dst])


def canonical_float(x: float) -> str:
    """Shortest text that parses back to exactly x; used in every data file."""
    return repr(float(x))


def format_float(x: float) -> str:
    """Six-decimal display text for human-readable tables."""
    text = f"{x:.6f}".rstrip("0").rstrip(".")
    return text if text not in ("", "-") else "0"


def graph_to_doc(g: HarmGraph) -> dict:
    return {
        "nodes": [
            {"id": i, "label": g.labels[i], "harm": g.harms[i]}
            | ({"name": g.names[i]} if g.names[i] else {})
            for i in range(g.num_nodes)
        ],
        "edges": [[u, v] for u, v in g.edges],
    }


def graph_from_doc(doc: dict) -> HarmGraph:
    nodes_by_id = sorted(doc["nodes"], key=lambda n: n["id"])
    if [n["id"] for n in nodes_by_id] != list(range(len(nodes_by_id))):
        raise ConstraintViolation("graph document ids must be dense 0..n-1")
    labels = [n["label"] for n in nodes_by_id]
    try:
        return build_graph(
            [(n["label"], n["harm"], n.get("name")) for n in nodes_by_id],
            [(labels[u], labels[v]) for u, v in doc["edges"]],
        )
    except GraphError as e:
        raise ConstraintViolation(str(e)) from e
    except (KeyError, IndexError, TypeError) as e:
        raise ConstraintViolation(f"malformed graph document: {e}") from e


def load_graph_json(path: str | Path) -> HarmGraph:
    with open(path, encoding="utf-8") as fh:
        return graph_from_doc(json.load(fh))


def save_graph_json(g: HarmGraph, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(graph_to_doc(g), fh, sort_keys=True, indent=2)
        fh.write("\n")


# --- rating conversion -----------------------------------------------------


@dataclass(frozen=True)
class RatingScale:
    """Either a numeric range or an ordered grade ladder.

    Numeric: [lo, hi] mapped linearly onto [0, 100]; higher_is_better flips
    the direction (a perfect rating lands on harm 0). Graded: equal-width
    bins over the grade list given best-first, so grades[0] -> 0 and the
    last grade -> 100.
    """

    lo: float | None = None
    hi: float | None = None
    higher_is_better: bool = True
    grades: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.grades is not None:
            if len(self.grades) < 2:
                raise ValueError("a graded scale needs at least two grades")
        else:
            if self.lo is None or self.hi is None or not self.lo < self.hi:
                raise ValueError("a numeric scale needs lo < hi")


def harm_from_rating(score: float | str, scale: RatingScale) -> float:
    """Convert an external rating to a harm score in [0, 100]."""
    if scale.grades is not None:
        if not isinstance(score, str):
            raise UnknownGrade(f"graded scale expects a grade string, got {score!r}")
        try:
            pos = scale.grades.index(score)
        except ValueError:
            raise UnknownGrade(
                f"grade {score!r} not in scale {list(scale.grades)}"
            ) from None
        return 100.0 * pos / (len(scale.grades) - 1)
    value = float(score)
    if not (scale.lo <= value <= scale.hi):
        raise OutOfScale(f"score {value} outside [{scale.lo}, {scale.hi}]")
    unit = (value - scale.lo) / (scale.hi - scale.lo)
    if scale.higher_is_better:
        unit = 1.0 - unit
    return 100.0 * unit


SUSTAINALYTICS_LIKE = RatingScale(lo=0, hi=100, higher_is_better=True)
SEVEN_GRADE_LADDER = RatingScale(grades=("AAA", "AA", "A", "BBB", "BB", "B", "CCC"))


# --- indicator harms -------------------------------------------------------


@dataclass(frozen=True)
class IndicatorSpec:
    name: str
    higher_is_better: bool


@dataclass
class IndicatorTable:
    """entity x indicator -> value, missing cells simply absent."""

    entities: list[str]
    indicators: list[str]
    values: dict[tuple[str, str], float]

    def value(self, entity: str, indicator: str) -> float | None:
        return self.values.get((entity, indicator))


def load_indicator_specs(path: str | Path) -> list[IndicatorSpec]:
    header, rows = _read_rows(path)
    cols = _columns(header, ["indicator", "higher_is_better"])
    specs = []
    seen = set()
    for lineno, fields in rows:
        name = _field(fields, cols["indicator"], lineno, "indicator")
        if name in seen:
            raise ConstraintViolation(f"duplicate indicator {name!r}", line=lineno)
        seen.add(name)
        hib = _parse_bool(
            _field(fields, cols["higher_is_better"], lineno, "higher_is_better"),
            lineno,
            cols["higher_is_better"] + 1,
        )
        specs.append(IndicatorSpec(name, hib))
    return specs


def load_indicator_table(path: str | Path) -> IndicatorTable:
    header, rows = _read_rows(path)
    cols = _columns(header, ["entity", "indicator", "value"])
    entities: list[str] = []
    indicators: list[str] = []
    values: dict[tuple[str, str], float] = {}
    for lineno, fields in rows:
        entity = _field(fields, cols["entity"], lineno, "entity")
        indicator = _field(fields, cols["indicator"], lineno, "indicator")
        value = _parse_float(
            _field(fields, cols["value"], lineno, "value"),
            lineno,
            cols["value"] + 1,
            "value",
        )
        if entity not in entities:
            entities.append(entity)
        if indicator not in indicators:
            indicators.append(indicator)
        values[(entity, indicator)] = value
    if not entities:
        raise ConstraintViolation(f"{path}: no indicator rows")
    return IndicatorTable(entities, indicators, values)


def normalize_indicator(
    values: Mapping[str, float], spec: IndicatorSpec
) -> dict[str, float]:
    """Min-max scale onto [0, 100] across entities, flipped when more is better.

    Entities missing from `values` stay missing; the result always attains
    both endpoints 0 and 100.
    """
    present = {e: v for e, v in values.items() if v is not None and math.isfinite(v)}
    if len(set(present.values())) < 2:
        raise DegenerateIndicator(
            f"indicator {spec.name!r} needs at least two distinct finite values"
        )
    lo = min(present.values())
    hi = max(present.values())
    out = {}
    for e, v in present.items():
        # divide before scaling: the ratio is exactly within [0, 1], so the
        # result cannot creep past 100 by a rounding ulp
        scaled = 100.0 * ((v - lo) / (hi - lo))
        out[e] = 100.0 - scaled if spec.higher_is_better else scaled
    return out


def intrinsic_harm_topk_worst(row: Mapping[str, float], k: int = 3) -> float:
    """Mean of the k largest normalized indicator harms of one entity."""
    if k < 1:
        raise ValueError("k must be >= 1")
    vals = []
    for name, v in row.items():
        if v is None:
            raise MissingIndicator(f"indicator {name!r} missing")
        vals.append(float(v))
    if not vals:
        raise MissingIndicator("entity has no indicator values")
    worst = sorted(vals, reverse=True)[: min(k, len(vals))]
    return math.fsum(worst) / len(worst)


def build_harm_scores(
    table: IndicatorTable,
    specs: Sequence[IndicatorSpec],
    k: int = 3,
    allow_partial: int | None = None,
) -> dict[str, float]:
    """Intrinsic harm per entity from an indicator table.

    Complete-case by default: an entity missing any configured indicator is
    excluded, because a top-k over differently-sized rows is not comparable.
    allow_partial=j relaxes this to "keep entities with at least j present
    indicators" and takes the top-k of whatever is present.
    """
    normalized: dict[str, dict[str, float]] = {}
    for spec in specs:
        col = {
            e: table.value(e, spec.name)
            for e in table.entities
            if table.value(e, spec.name) is not None
        }
        normalized[spec.name] = normalize_indicator(col, spec)

    harms: dict[str, float] = {}
    for entity in table.entities:
        row = {
            spec.name: normalized[spec.name].get(entity)
            for spec in specs
            if normalized[spec.name].get(entity) is not None
        }
        if allow_partial is None:
            if len(row) < len(specs):
                continue
        elif len(row) < allow_partial:
            continue
        if row:
            harms[entity] = intrinsic_harm_topk_worst(row, k)
    return harms


# --- trade network ---------------------------------------------------------


@dataclass(frozen=True)
class TradeFlowRecord:
    origin: str
    dest: str
    sector: str
    year: int
    value_usd: float


def normalize_country(label: str, aliases: Mapping[str, str]) -> str | None:
    """3-letter code for a raw label, or None when unresolvable."""
    code = aliases.get(label, label).strip().upper()
    return code if _ISO3.match(code) else None


def load_trade_flows(
    path: str | Path, aliases: Mapping[str, str] | None = None
) -> list[TradeFlowRecord]:
    aliases = aliases or {}
    header, rows = _read_rows(path)
    cols = _columns(header, ["origin", "dest", "sector", "year", "value_usd"])
    records = []
    unmapped: list[str] = []
    for lineno, fields in rows:
        raw_origin = _field(fields, cols["origin"], lineno, "origin")
        raw_dest = _field(fields, cols["dest"], lineno, "dest")
        origin = normalize_country(raw_origin, aliases)
        dest = normalize_country(raw_dest, aliases)
        if origin is None:
            unmapped.append(raw_origin)
        if dest is None:
            unmapped.append(raw_dest)
        if origin is None or dest is None:
            continue
        if origin == dest:
            raise ConstraintViolation(
                f"flow from {origin} to itself is not a trade relation", line=lineno
            )
        year_text = _field(fields, cols["year"], lineno, "year")
        try:
            year = int(year_text)
        except ValueError:
            raise ParseError(lineno, cols["year"] + 1, f"year {year_text!r} is not an integer") from None
        value = _parse_float(
            _field(fields, cols["value_usd"], lineno, "value_usd"),
            lineno,
            cols["value_usd"] + 1,
            "value_usd",
        )
        if value < 0:
            raise ConstraintViolation(f"negative trade value {value}", line=lineno)
        records.append(
            TradeFlowRecord(
                origin=origin,
                dest=dest,
                sector=_field(fields, cols["sector"], lineno, "sector"),
                year=year,
                value_usd=value,
            )
        )
    if unmapped:
        raise UnmappedLabels(unmapped)
    return records


def build_trade_network(
    records: Sequence[TradeFlowRecord], year: int, threshold_usd: float
) -> HarmGraph:
    """Edge skeleton: a -> b iff the year's flow summed over sectors exceeds the threshold.

    Strictly exceeds: a pair sitting exactly on the threshold gets no edge.
    Harms are placeholder zeros until real scores are attached by pruning.
    """
    sums: dict[tuple[str, str], float] = {}
    countries: set[str] = set()
    for r in records:
        if r.year != year:
            continue
        countries.add(r.origin)
        countries.add(r.dest)
        key = (r.origin, r.dest)
        sums[key] = sums.get(key, 0.0) + r.value_usd
    nodes = [(c, 0.0) for c in sorted(countries)]
    edges = [pair for pair, total in sorted(sums.items()) if total > threshold_usd]
    return build_graph(nodes, edges)


def prune_trade_network(
    g: HarmGraph,
    harms: Mapping[str, float],
    mode: str = "fixpoint",
) -> HarmGraph:
    """Drop unusable countries and attach harm scores.

    Removes nodes without a valid harm score, then nodes with no incoming
    links, then isolated nodes; the in-degree/isolation pass repeats until
    nothing changes ("fixpoint", the default) or runs once ("once").
    """
    if mode not in ("fixpoint", "once"):
        raise ValueError(f"prune mode must be 'fixpoint' or 'once', got {mode!r}")

    def valid(label: str) -> bool:
        h = harms.get(label)
        return h is not None and math.isfinite(h) and HARM_MIN <= h <= HARM_MAX

    def degrees(members: set[int]) -> tuple[dict[int, int], dict[int, int]]:
        indeg = {i: 0 for i in members}
        outdeg = {i: 0 for i in members}
        for u, v in g.edges:
            if u in members and v in members:
                indeg[v] += 1
                outdeg[u] += 1
        return indeg, outdeg

    alive = {i for i in range(g.num_nodes) if valid(g.labels[i])}
    while True:
        indeg, _ = degrees(alive)
        no_incoming = {i for i in alive if indeg[i] == 0}
        alive -= no_incoming
        indeg, outdeg = degrees(alive)
        isolated = {i for i in alive if indeg[i] == 0 and outdeg[i] == 0}
        alive -= isolated
        if mode == "once" or (not no_incoming and not isolated):
            break

    nodes = [(g.labels[i], harms[g.labels[i]], g.names[i]) for i in sorted(alive)]
    labels_alive = {g.labels[i] for i in alive}
    edges = [
        (g.labels[u], g.labels[v])
        for u, v in g.edges
        if g.labels[u] in labels_alive and g.labels[v] in labels_alive
    ]
    return build_graph(nodes, edges)
