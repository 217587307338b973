"""HTTP facade for the composer UI: parse, run, and backend listing.

Stateless classroom LAN tool, no authentication. All endpoints live under
/v1; CORS is open so the composer can be served from any origin.
"""
from __future__ import annotations

import secrets

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from qxemu import qasm
from qxemu.circuit import Circuit, bitstring_of, validate
from qxemu.engine import NoiseModel, RunConfig, sample, statevector, MAX_SHOTS
from qxemu.linalg import probabilities
from qxemu.topology import BUILTIN_NAMES, builtin

MAX_SERVICE_QUBITS = 16


def _error(status: int, message: str, **extra):
    return JSONResponse(status_code=status, content={"message": message, **extra})


def _parse_qasm_or_422(source: str):
    try:
        return qasm.parse(source)
    except qasm.QasmError as exc:
        return _error(
            422, exc.message, line=exc.line, column=exc.column
        )


def _theory_probs(circuit: Circuit) -> dict:
    """Noiseless outcome probabilities keyed like histogram bitstrings."""
    probs = probabilities(statevector(circuit))
    out: dict = {}
    for k, p in enumerate(probs):
        if p <= 0.0:
            continue
        key = bitstring_of(k, circuit)
        out[key] = out.get(key, 0.0) + float(p)
    return out


def create_app() -> FastAPI:
    app = FastAPI(title="qxemu service", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.post("/v1/parse")
    async def parse_endpoint(request: Request):
        try:
            body = await request.json()
        except Exception:
            return _error(400, "body must be JSON")
        if not isinstance(body, dict) or not isinstance(body.get("qasm"), str):
            return _error(400, "body must be {\"qasm\": \"...\"}")
        result = _parse_qasm_or_422(body["qasm"])
        if not isinstance(result, Circuit):
            return result
        return result.to_dict()

    @app.post("/v1/run")
    async def run_endpoint(request: Request):
        try:
            body = await request.json()
        except Exception:
            return _error(400, "body must be JSON")
        if not isinstance(body, dict):
            return _error(400, "body must be a JSON object")
        has_qasm = isinstance(body.get("qasm"), str)
        has_circuit = isinstance(body.get("circuit"), dict)
        if has_qasm == has_circuit:
            return _error(400, "provide exactly one of 'qasm' or 'circuit'")
        if has_qasm:
            result = _parse_qasm_or_422(body["qasm"])
            if not isinstance(result, Circuit):
                return result
            circuit = result
        else:
            try:
                circuit = Circuit.from_dict(body["circuit"])
            except (KeyError, ValueError, IndexError, TypeError) as exc:
                return _error(422, f"invalid circuit: {exc}")
        if circuit.n_qubits > MAX_SERVICE_QUBITS:
            return _error(400, f"n_qubits capped at {MAX_SERVICE_QUBITS}")
        backend_name = body.get("backend", "custom")
        if backend_name not in BUILTIN_NAMES:
            return _error(400, f"unknown backend {backend_name!r}")
        backend = builtin(backend_name)
        shots = body.get("shots", 1024)
        if not isinstance(shots, int) or not 1 <= shots <= MAX_SHOTS:
            return _error(400, f"shots must be an integer in 1..{MAX_SHOTS}")
        seed = body.get("seed")
        if seed is None:
            # 53 bits so the value survives a round trip through JSON
            # numbers in browser clients (2^53 - 1 is the largest exact
            # integer there); the client echoes it back to rerun.
            seed = secrets.randbits(53)
        elif not isinstance(seed, int):
            return _error(400, "seed must be an integer")
        noise_name = body.get("noise", "off")
        if noise_name not in ("off", "preset"):
            return _error(400, "noise must be 'off' or 'preset'")
        noise = NoiseModel.preset() if noise_name == "preset" else None

        report = validate(circuit, backend)
        if not report.ok:
            return _error(
                409,
                "circuit fails backend validation",
                violations=[
                    {"kind": v.kind, "message": v.message, "op_index": v.op_index}
                    for v in report.violations
                ],
            )
        cfg = RunConfig(shots=shots, seed=seed, backend=backend, noise=noise)
        hist = sample(circuit, cfg)
        return {
            "histogram": hist.to_dict(),
            "statevector_probs": _theory_probs(circuit),
            "seed": seed,
        }

    @app.get("/v1/backends")
    async def backends_endpoint():
        return [builtin(name).to_dict() for name in BUILTIN_NAMES]

    return app


app = create_app()


def main():  # pragma: no cover - thin launcher
    import uvicorn

    uvicorn.run(app, host="127.0.0.1", port=8742)


if __name__ == "__main__":  # pragma: no cover
    main()
