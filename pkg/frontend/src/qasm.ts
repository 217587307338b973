// QASM text emission for the editor panel. The service owns parsing; this
// mirrors its emitter so grid -> text -> parse is op-for-op lossless.

import { CircuitJson } from "./types.js";

/**
 * Render an angle, preferring exact k*pi/m forms. The comparison is plain
 * float equality: both sides evaluate (k * PI) / m with the same rounding,
 * so a detected fraction re-parses to the identical double. Anything else
 * falls back to String(x), whose shortest-repr output also round-trips.
 */
export function formatAngle(x: number): string {
    if (x === 0) return "0";
    for (let m = 1; m <= 12; m++) {
        for (let k = -24; k <= 24; k++) {
            if (k !== 0 && x === (k * Math.PI) / m) {
                if (k === 1) return m === 1 ? "pi" : `pi/${m}`;
                if (k === -1) return m === 1 ? "-pi" : `-pi/${m}`;
                return m > 1 ? `${k}*pi/${m}` : `${k}*pi`;
            }
        }
    }
    return String(x);
}

export function emitQasm(circuit: CircuitJson): string {
    const lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        `qreg q[${circuit.n_qubits}];`,
        `creg c[${circuit.n_clbits}];`,
    ];
    for (const op of circuit.ops) {
        let name: string = op.name;
        if (op.params.length > 0) {
            name += "(" + op.params.map(formatAngle).join(",") + ")";
        }
        const refs = op.qubits.map((q) => `q[${q}]`).join(",");
        lines.push(`${name} ${refs};`);
    }
    for (const m of circuit.measurements) {
        lines.push(`measure q[${m.qubit}] -> c[${m.clbit}];`);
    }
    return lines.join("\n") + "\n";
}
