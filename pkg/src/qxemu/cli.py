"""Command-line surface: parse, validate, run, sweep, and report.

`run` applies the noise preset by default (emulating the real machine);
`simulate` is the ideal, noiseless counterpart. Exit codes: 0 success,
1 validation or parse failure, 2 usage error.
"""
from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from qxemu import qasm
from qxemu.circuit import Circuit, validate
from qxemu.engine import (
    Histogram,
    NoiseModel,
    RunConfig,
    ValidationFailure,
    sample,
)
from qxemu.experiments import run_exp1, run_exp2, run_exp3
from qxemu.topology import (
    BUILTIN_NAMES,
    BackendTopology,
    builtin,
    format_coupling_map,
    load_topology,
)

BAR_COLUMNS = 50


def _resolve_backend(name: str) -> BackendTopology:
    if name in BUILTIN_NAMES:
        return builtin(name)
    if os.path.exists(name):
        return load_topology(name)
    backend_dir = os.environ.get("QX_BACKEND_DIR")
    if backend_dir:
        candidate = Path(backend_dir) / f"{name}.json"
        if candidate.exists():
            return load_topology(str(candidate))
    raise click.UsageError(f"unknown backend {name!r}")


def _resolve_noise(spec: str) -> NoiseModel | None:
    if spec == "off":
        return None
    if spec == "preset":
        return NoiseModel.preset()
    if os.path.exists(spec):
        with open(spec, encoding="utf-8") as f:
            data = json.load(f)
        return NoiseModel(
            dict(data.get("gate_depolarizing", {})),
            float(data.get("readout_flip", 0.0)),
        )
    raise click.UsageError(f"--noise must be off, preset, or a JSON file: {spec!r}")


def _load_circuit(path: str) -> Circuit:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise click.UsageError(str(exc))
    try:
        return qasm.parse(text)
    except qasm.QasmError as exc:
        click.echo(f"{path}: {exc}", err=True)
        sys.exit(1)


def _render_bars(hist: Histogram) -> str:
    ordered = sorted(hist.counts.items(), key=lambda kv: (-kv[1], kv[0]))
    lines = []
    for key, count in ordered:
        frac = count / hist.shots
        bar = "#" * round(frac * BAR_COLUMNS)
        lines.append(f"{key} {bar} {count} ({frac:.4f})")
    return "\n".join(lines)


def _emit_histogram(hist: Histogram, fmt: str, out: str | None):
    if fmt == "json":
        text = hist.to_json()
    elif fmt == "bars":
        text = _render_bars(hist)
    else:
        rows = [f"{k},{hist.counts[k]}" for k in sorted(hist.counts)]
        text = "bitstring,count\n" + "\n".join(rows)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        click.echo(text)


def _run_command(qasmfile, backend, shots, seed, noise, fmt, out, default_noise):
    circuit = _load_circuit(qasmfile)
    topo = _resolve_backend(backend)
    noise_model = _resolve_noise(noise if noise is not None else default_noise)
    cfg = RunConfig(shots=shots, seed=seed, backend=topo, noise=noise_model)
    try:
        hist = sample(circuit, cfg)
    except ValidationFailure as exc:
        click.echo(str(exc), err=True)
        sys.exit(1)
    _emit_histogram(hist, fmt, out)


_common = [
    click.option("--backend", default="custom", help="builtin name or topology file"),
    click.option("--shots", default=1024, type=int),
    click.option("--seed", default=0, type=int),
    click.option("--noise", default=None, help="off | preset | JSON file"),
    click.option("--format", "fmt", default="json", type=click.Choice(["json", "bars", "csv"])),
    click.option("--out", default=None, help="write output to this path"),
]


def _with_common(cmd):
    for opt in reversed(_common):
        cmd = opt(cmd)
    return cmd


@click.group()
def main():
    """Desk-scale emulator of the five-qubit IBM Q cloud machines."""


@main.command()
@click.argument("qasmfile")
@_with_common
def run(qasmfile, backend, shots, seed, noise, fmt, out):
    """Run a QASM file with the noise preset (like the real machine)."""
    _run_command(qasmfile, backend, shots, seed, noise, fmt, out, "preset")


@main.command()
@click.argument("qasmfile")
@_with_common
def simulate(qasmfile, backend, shots, seed, noise, fmt, out):
    """Run a QASM file noiselessly (ideal simulation)."""
    _run_command(qasmfile, backend, shots, seed, noise, fmt, out, "off")


@main.command(name="validate")
@click.argument("qasmfile")
@click.option("--backend", default="custom", help="builtin name or topology file")
def validate_cmd(qasmfile, backend):
    """Check a QASM file against a backend's constraints."""
    circuit = _load_circuit(qasmfile)
    topo = _resolve_backend(backend)
    report = validate(circuit, topo)
    if report.ok:
        click.echo("ok")
        return
    for v in report.violations:
        click.echo(f"{v.kind}: {v.message}", err=True)
    sys.exit(1)


def _write_report(report, out: str | None):
    if out:
        path = Path(out)
        path.mkdir(parents=True, exist_ok=True)
        (path / f"{report.id}_report.json").write_text(
            report.to_json() + "\n", encoding="utf-8"
        )
    click.echo(f"{report.id}: {'pass' if report.verdict else 'fail'}")


@main.command()
@click.option("--backend", default="custom")
@click.option("--shots", default=8192, type=int)
@click.option("--seed", default=0, type=int)
@click.option("--out", default=None, help="directory for report files")
def exp1(backend, shots, seed, out):
    """Quantum coin: measure an equal superposition."""
    report = run_exp1(shots=shots, seed=seed, backend=_resolve_backend(backend))
    _write_report(report, out)


@main.command()
@click.option("--backend", default="custom")
@click.option("--shots", default=8192, type=int)
@click.option("--seed", default=0, type=int)
@click.option("--out", default=None, help="directory for report files")
def exp2(backend, shots, seed, out):
    """Mach-Zehnder phase sweep with the cos²(φ/2) check."""
    report = run_exp2(shots=shots, seed=seed, backend=_resolve_backend(backend))
    if out:
        path = Path(out)
        path.mkdir(parents=True, exist_ok=True)
        rows = report.results["table"]
        csv_lines = ["phi,p0,shots"] + [
            f"{r['phi']!r},{r['p0']!r},{r['shots']}" for r in rows
        ]
        (path / "exp2_sweep.csv").write_text("\n".join(csv_lines) + "\n", encoding="utf-8")
        dat_lines = [f"{r['phi']} {r['p0']}" for r in rows]
        (path / "exp2_sweep.dat").write_text("\n".join(dat_lines) + "\n", encoding="utf-8")
    _write_report(report, out)


@main.command()
@click.option("--variant", default="psi_plus", type=click.Choice(["psi_plus", "phi_plus", "u3_theta"]))
@click.option("--theta", default=0.0, type=float)
@click.option("--backend", default="custom")
@click.option("--shots", default=8192, type=int)
@click.option("--seed", default=0, type=int)
@click.option("--noise", default="off", help="off | preset | JSON file")
@click.option("--out", default=None, help="directory for report files")
def exp3(variant, theta, backend, shots, seed, noise, out):
    """Bell-state preparation and entanglement analysis."""
    report = run_exp3(
        variant=variant,
        theta=theta,
        shots=shots,
        seed=seed,
        backend=_resolve_backend(backend),
        noise=_resolve_noise(noise),
    )
    _write_report(report, out)


@main.command()
def backends():
    """List built-in backends and their coupling maps."""
    for name in BUILTIN_NAMES:
        topo = builtin(name)
        click.echo(f"{name} {format_coupling_map(topo.coupling)}")


if __name__ == "__main__":
    main()
