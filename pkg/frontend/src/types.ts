// Shared types mirroring the service's JSON shapes.

export type GateName =
    | "id" | "x" | "y" | "z" | "h" | "s" | "sdg" | "t" | "tdg"
    | "u1" | "u2" | "u3" | "cx";

export interface GateOpJson {
    name: GateName;
    params: number[];
    qubits: number[];
}

export interface MeasurementJson {
    qubit: number;
    clbit: number;
}

export interface CircuitJson {
    n_qubits: number;
    n_clbits: number;
    ops: GateOpJson[];
    measurements: MeasurementJson[];
}

export interface HistogramJson {
    shots: number;
    seed: number;
    counts: Record<string, number>;
}

export interface RunResponse {
    histogram: HistogramJson;
    statevector_probs: Record<string, number>;
    seed: number;
}

export interface BackendInfo {
    name: string;
    n_qubits: number;
    coupling: Record<string, number[]>;
    basis: string[];
}

export interface ParseDiagnostic {
    message: string;
    line: number;
    column: number;
}

export interface RunViolation {
    kind: string;
    message: string;
    op_index: number;
}

/** Number of angle parameters each gate takes. */
export const PARAM_COUNT: Record<GateName, number> = {
    id: 0, x: 0, y: 0, z: 0, h: 0, s: 0, sdg: 0, t: 0, tdg: 0,
    u1: 1, u2: 2, u3: 3, cx: 0,
};

export const SINGLE_QUBIT_GATES: GateName[] = [
    "id", "x", "y", "z", "h", "s", "sdg", "t", "tdg", "u1", "u2", "u3",
];

export const N_QUBITS = 5;
export const SHOT_CHOICES = [1, 1024, 4096, 8192];
