"""Command-line front end: configure experiments, run them, emit CSV.

Four commands map onto the experiment families:

  dpso single   one experiment cell (mean/std of repeated trials)
  dpso table    the (m, dim) mean-fitness grid for named test conditions
  dpso sweep-w  mean fitness across a fixed-inertia grid, several chaos settings
  dpso trace    per-generation mean of the swarm-best trajectory

Settings come from optional ``key=value`` config files and/or flags (flags
win).  Output is CSV only; plotting is left to external tools.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from .engine import ConfigError, InertiaSchedule
from .experiment import (DEFAULT_CHAOS_VARIANTS, DEFAULT_TRIALS, G_MAX_BY_DIM,
                         TABLE_DIMS, TABLE_M_LIST, TABLE_VARIANTS,
                         ExperimentConfig, SweepTable, sweep_w, table_cells,
                         trace, run_trials)
from .objectives import UnknownObjectiveError, benchmark_domain
from .reference import SF0_LABEL

CSV_TABLE_VERSION = "# dpso csv table v1"
CSV_TRACE_VERSION = "# dpso csv trace v1"

TABLE_COLUMNS = ("variant", "objective", "m", "dim", "g_max", "w_kind",
                 "w_value_or_range", "c_v", "c_l", "n_trials", "base_seed",
                 "mean_best", "std_best", "source")

DEFAULT_W_GRID = tuple(round(0.1 * i, 1) for i in range(11))

#: config-file keys, with accepted aliases mapped to canonical names
_KEY_ALIASES = {
    "d": "dim", "dimension": "dim",
    "gmax": "g_max",
    "particles": "m",
    "w_schedule": "w_kind", "schedule": "w_kind",
    "trials": "n_trials",
    "seed": "base_seed",
}

_KNOWN_KEYS = {
    "command", "objective", "dim", "m", "g_max", "variant", "w_kind", "w",
    "w_start", "w_end", "c_v", "c_l", "c1", "c2", "n_trials", "base_seed",
    "workers", "out", "w_grid", "chaos_variants", "variants", "m_list",
    "dims", "include_reference",
}


@dataclass(frozen=True)
class RunManifest:
    """A fully validated plan for one command invocation.

    `experiment` carries the single/trace/sweep-w settings; the table
    command instead resolves its cells from (`objective`, `table_variants`,
    `m_list`, `dims`, `n_trials`, `base_seed`).
    """

    command: str
    experiment: ExperimentConfig | None = None
    objective: str | None = None
    n_trials: int = DEFAULT_TRIALS
    base_seed: int = 0
    w_grid: tuple[float, ...] = DEFAULT_W_GRID
    chaos_variants: tuple[tuple[float, float], ...] = DEFAULT_CHAOS_VARIANTS
    table_variants: tuple[str, ...] = ("SF_1", "DF_2", "DF_3")
    m_list: tuple[int, ...] = TABLE_M_LIST
    dims: tuple[int, ...] = TABLE_DIMS
    include_reference: bool = True
    out: str | None = None
    workers: int | None = None


def _parse_kv_document(text: str) -> dict[str, str]:
    """Parse a flat ``key=value`` document ('#' starts a comment)."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"config line {lineno}: expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip().lower().replace("-", "_")
        key = _KEY_ALIASES.get(key, key)
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"{key}: unknown config key (line {lineno})")
        values[key] = value.strip()
    return values


def _to_float(values: dict, key: str) -> float:
    try:
        return float(values[key])
    except ValueError:
        raise ConfigError(f"{key}: expected a number, got {values[key]!r}") from None


def _to_int(values: dict, key: str) -> int:
    try:
        return int(values[key])
    except ValueError:
        raise ConfigError(f"{key}: expected an integer, got {values[key]!r}") from None


def _float_list(values: dict, key: str) -> tuple[float, ...]:
    text = values[key].strip()
    if not text:
        return ()
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError:
        raise ConfigError(f"{key}: expected comma-separated numbers, got {values[key]!r}") from None


def _int_list(values: dict, key: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in values[key].split(","))
    except ValueError:
        raise ConfigError(f"{key}: expected comma-separated integers, got {values[key]!r}") from None


def _resolve_inertia(values: dict[str, str]) -> InertiaSchedule:
    kind = values.get("w_kind")
    if kind is None:
        kind = "fixed" if "w" in values else "linear"
    if kind == "fixed":
        if "w" not in values:
            raise ConfigError("w: a fixed schedule needs an inertia weight")
        return InertiaSchedule.fixed(_to_float(values, "w"))
    if kind == "linear":
        w_start = _to_float(values, "w_start") if "w_start" in values else 0.9
        w_end = _to_float(values, "w_end") if "w_end" in values else 0.4
        return InertiaSchedule.linear(w_start, w_end)
    raise ConfigError(f"w_kind: must be 'fixed' or 'linear', got {kind!r}")


def _apply_variant(values: dict[str, str]) -> dict[str, str]:
    """Expand a named test condition into explicit keys (explicit keys win)."""
    name = values.get("variant")
    if name is None:
        return values
    if name == SF0_LABEL:
        raise ConfigError(
            "variant: SF_0 is a quoted constant column, not a runnable "
            "condition; its values ship with the package (source=paper)")
    if name not in TABLE_VARIANTS:
        raise ConfigError(f"variant: unknown test condition {name!r}; choose "
                          f"from " + ", ".join(sorted(TABLE_VARIANTS)))
    inertia, c_v, c_l = TABLE_VARIANTS[name]
    expanded = dict(values)
    expanded.setdefault("w_kind", inertia.kind)
    if inertia.kind == "fixed":
        expanded.setdefault("w", f"{inertia.w_start}")
    else:
        expanded.setdefault("w_start", f"{inertia.w_start}")
        expanded.setdefault("w_end", f"{inertia.w_end}")
    expanded.setdefault("c_v", f"{c_v}")
    expanded.setdefault("c_l", f"{c_l}")
    return expanded


def _resolve_experiment(values: dict[str, str], need_g_max: bool) -> ExperimentConfig:
    for key in ("objective", "dim", "m"):
        if key not in values:
            raise ConfigError(f"{key}: required setting is missing")
    objective = values["objective"].strip().lower()
    dim = _to_int(values, "dim")
    try:
        benchmark_domain(objective, max(dim, 1))
    except UnknownObjectiveError as exc:
        raise ConfigError(f"objective: {exc}") from None
    if "g_max" not in values:
        if need_g_max:
            raise ConfigError("g_max: required setting is missing")
        values = dict(values)
        values["g_max"] = "1000"
    return ExperimentConfig(
        objective=objective,
        dim=dim,
        m=_to_int(values, "m"),
        g_max=_to_int(values, "g_max"),
        inertia=_resolve_inertia(values),
        c_v=_to_float(values, "c_v") if "c_v" in values else 0.0,
        c_l=_to_float(values, "c_l") if "c_l" in values else 0.0,
        c1=_to_float(values, "c1") if "c1" in values else 2.0,
        c2=_to_float(values, "c2") if "c2" in values else 2.0,
        n_trials=_to_int(values, "n_trials") if "n_trials" in values else DEFAULT_TRIALS,
        base_seed=_to_int(values, "base_seed") if "base_seed" in values else 0,
    )


def _parse_chaos_variants(text: str) -> tuple[tuple[float, float], ...]:
    # format: "cv:cl" pairs separated by ';', e.g. "0:0;0.001:0;0:0.001"
    pairs = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        pieces = part.split(":")
        if len(pieces) != 2:
            raise ConfigError(f"chaos_variants: expected cv:cl pairs separated "
                              f"by ';', got {part!r}")
        try:
            pairs.append((float(pieces[0]), float(pieces[1])))
        except ValueError:
            raise ConfigError(f"chaos_variants: expected numbers in {part!r}") from None
    return tuple(pairs)


def resolve_manifest(values: dict[str, str]) -> RunManifest:
    """Validate a merged key-value mapping into a runnable manifest."""
    command = values.get("command")
    if command is None:
        raise ConfigError("command: required setting is missing "
                          "(single, table, sweep-w or trace)")
    command = command.strip().lower()
    if command not in ("single", "table", "sweep-w", "trace"):
        raise ConfigError(f"command: unknown command {command!r}")

    values = _apply_variant(values)
    workers = _to_int(values, "workers") if "workers" in values else None
    if workers is not None and workers < 1:
        raise ConfigError(f"workers: must be >= 1, got {workers}")
    out = values.get("out")

    if command == "table":
        objective = values.get("objective", "").strip().lower()
        if not objective:
            raise ConfigError("objective: required setting is missing")
        try:
            benchmark_domain(objective, 1)
        except UnknownObjectiveError as exc:
            raise ConfigError(f"objective: {exc}") from None
        variants = tuple(v.strip() for v in values["variants"].split(",")) \
            if "variants" in values else ("SF_1", "DF_2", "DF_3")
        for variant in variants:
            if variant == SF0_LABEL:
                raise ConfigError(
                    "variants: SF_0 is a quoted constant column, not a "
                    "runnable condition; it is emitted automatically")
            if variant not in TABLE_VARIANTS:
                raise ConfigError(f"variants: unknown test condition {variant!r}")
        n_trials = _to_int(values, "n_trials") if "n_trials" in values else DEFAULT_TRIALS
        if n_trials < 1:
            raise ConfigError(f"n_trials: must be >= 1, got {n_trials}")
        include_reference = values.get("include_reference", "true").lower() not in ("false", "0", "no")
        m_list = _int_list(values, "m_list") if "m_list" in values else TABLE_M_LIST
        dims = _int_list(values, "dims") if "dims" in values else TABLE_DIMS
        for m in m_list:
            if m < 1:
                raise ConfigError(f"m_list: particle counts must be >= 1, got {m}")
        for dim in dims:
            if dim not in G_MAX_BY_DIM:
                raise ConfigError(f"dims: table experiments define G_max only "
                                  f"for dimensions "
                                  + ", ".join(str(d) for d in sorted(G_MAX_BY_DIM))
                                  + f", got {dim}")
        return RunManifest(
            command=command, objective=objective, n_trials=n_trials,
            base_seed=_to_int(values, "base_seed") if "base_seed" in values else 0,
            table_variants=variants, m_list=m_list, dims=dims,
            include_reference=include_reference, out=out, workers=workers)

    experiment = _resolve_experiment(values, need_g_max=(command != "sweep-w"))
    if command == "sweep-w":
        w_grid = _float_list(values, "w_grid") if "w_grid" in values else DEFAULT_W_GRID
        for w in w_grid:
            if not 0.0 <= w <= 1.0:
                raise ConfigError(f"w_grid: sweep weights must lie in [0, 1], got {w}")
        chaos_variants = (_parse_chaos_variants(values["chaos_variants"])
                          if "chaos_variants" in values else DEFAULT_CHAOS_VARIANTS)
        for c_v, c_l in chaos_variants:
            if not 0.0 <= c_v <= 1.0:
                raise ConfigError(f"c_v: chaotic factor must be in [0, 1], got {c_v}")
            if not 0.0 <= c_l <= 1.0:
                raise ConfigError(f"c_l: chaotic factor must be in [0, 1], got {c_l}")
        return RunManifest(command=command, experiment=experiment,
                           w_grid=tuple(w_grid), chaos_variants=chaos_variants,
                           out=out, workers=workers)
    return RunManifest(command=command, experiment=experiment, out=out,
                       workers=workers)


def parse_config(source: str) -> RunManifest:
    """Parse and validate a ``key=value`` config document into a manifest."""
    return resolve_manifest(_parse_kv_document(source))


def _format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def emit_csv(result: SweepTable | np.ndarray, destination: str) -> None:
    """Write an experiment result as UTF-8 CSV.

    Tables get one row per cell with the full parameterization; traces get
    (generation, mean_best) rows.  Output is byte-deterministic for a given
    result; the first line is a schema version comment.
    """
    if isinstance(result, SweepTable):
        lines = [CSV_TABLE_VERSION, ",".join(TABLE_COLUMNS)]
        for row in result.rows:
            lines.append(",".join(_format_value(getattr(row, col))
                                  for col in TABLE_COLUMNS))
    else:
        trajectory = np.asarray(result)
        lines = [CSV_TRACE_VERSION, "generation,mean_best"]
        for generation, value in enumerate(trajectory):
            lines.append(f"{generation},{_format_value(float(value))}")
    with open(destination, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dpso",
        description="Standard and dissipative particle swarm experiments")
    sub = parser.add_subparsers(dest="command")

    def add_common(p: argparse.ArgumentParser, table: bool = False):
        p.add_argument("--config", help="key=value config file")
        p.add_argument("--objective", help="rastrigin or griewank")
        p.add_argument("--trials", type=int, dest="n_trials",
                       help=f"trials per cell (default {DEFAULT_TRIALS})")
        p.add_argument("--seed", type=int, dest="base_seed",
                       help="base seed (default 0)")
        p.add_argument("--workers", type=int, help="parallel trial processes")
        p.add_argument("--out", help="CSV output path")
        if table:
            return
        p.add_argument("--dim", type=int, help="problem dimension")
        p.add_argument("--particles", type=int, dest="m", help="swarm size")
        p.add_argument("--gmax", type=int, dest="g_max", help="generations")
        p.add_argument("--variant", help="named condition: SF_1, DF_2 or DF_3")
        p.add_argument("--w", type=float, help="fixed inertia weight")
        p.add_argument("--w-schedule", dest="w_kind", choices=("fixed", "linear"),
                       help="inertia schedule kind")
        p.add_argument("--w-start", type=float, dest="w_start",
                       help="linear schedule start (default 0.9)")
        p.add_argument("--w-end", type=float, dest="w_end",
                       help="linear schedule end (default 0.4)")
        p.add_argument("--cv", type=float, dest="c_v",
                       help="velocity chaotic factor (default 0)")
        p.add_argument("--cl", type=float, dest="c_l",
                       help="position chaotic factor (default 0)")

    add_common(sub.add_parser("single", help="run one experiment cell"))
    add_common(sub.add_parser("trace", help="mean convergence trajectory"))

    p_sweep = sub.add_parser("sweep-w", help="inertia-weight sweep")
    add_common(p_sweep)
    p_sweep.add_argument("--w-grid", dest="w_grid",
                         help="comma-separated inertia weights "
                              "(default 0.0,0.1,...,1.0)")
    p_sweep.add_argument("--chaos-variants", dest="chaos_variants",
                         help="cv:cl pairs separated by ';' "
                              "(default SPSO plus four chaos settings)")

    p_table = sub.add_parser("table", help="mean-fitness (m, dim) grid")
    add_common(p_table, table=True)
    p_table.add_argument("--variants",
                         help="comma-separated conditions (default SF_1,DF_2,DF_3)")
    p_table.add_argument("--m-list", dest="m_list",
                         help="comma-separated swarm sizes (default 20,40,80,160)")
    p_table.add_argument("--dims", help="comma-separated dimensions (default 10,20,30)")
    p_table.add_argument("--no-reference", action="store_true",
                         help="omit the quoted SF_0 rows")
    return parser


def _merge_cli_values(args: argparse.Namespace) -> dict[str, str]:
    values: dict[str, str] = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            values.update(_parse_kv_document(fh.read()))
    for key in ("objective", "dim", "m", "g_max", "variant", "w", "w_kind",
                "w_start", "w_end", "c_v", "c_l", "n_trials", "base_seed",
                "workers", "out", "w_grid", "chaos_variants", "variants",
                "m_list", "dims"):
        value = getattr(args, key, None)
        if value is not None:
            values[key] = str(value)
    if getattr(args, "no_reference", False):
        values["include_reference"] = "false"
    values["command"] = args.command
    return values


def _single_table(manifest: RunManifest) -> SweepTable:
    from .experiment import _computed_row

    config = manifest.experiment
    mean, std, _ = run_trials(config, workers=manifest.workers)
    variant = "SPSO" if config.c_v == 0.0 and config.c_l == 0.0 else "DPSO"
    return SweepTable([_computed_row(config, variant, mean, std)])


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return 2
    try:
        manifest = resolve_manifest(_merge_cli_values(args))
        if manifest.command == "single":
            table = _single_table(manifest)
        elif manifest.command == "table":
            table = table_cells(manifest.objective, variants=manifest.table_variants,
                                m_list=manifest.m_list, dims=manifest.dims,
                                n_trials=manifest.n_trials, base_seed=manifest.base_seed,
                                workers=manifest.workers,
                                include_reference=manifest.include_reference)
        elif manifest.command == "sweep-w":
            table = sweep_w(manifest.experiment, manifest.w_grid,
                            manifest.chaos_variants, workers=manifest.workers)
        else:  # trace
            table = None
            trajectory = trace(manifest.experiment, workers=manifest.workers)

        if manifest.command == "trace":
            if manifest.out:
                emit_csv(trajectory, manifest.out)
            print(f"trace: {len(trajectory)} generations, "
                  f"final mean_best={_format_value(float(trajectory[-1]))}")
        else:
            if manifest.out:
                emit_csv(table, manifest.out)
            for row in table.rows:
                print(f"{row.variant} {row.objective} m={row.m} dim={row.dim} "
                      f"w={row.w_value_or_range} c_v={_format_value(row.c_v)} "
                      f"c_l={_format_value(row.c_l)} "
                      f"mean_best={_format_value(row.mean_best)}"
                      + (f" std_best={_format_value(row.std_best)}"
                         if row.std_best is not None else "")
                      + (f" [{row.source}]" if row.source != "computed" else ""))
        if manifest.out:
            print(f"wrote {manifest.out}")
        return 0
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
