// Grid model for the composer: five horizontal qubit lines, gates placed
// into (column, qubit) cells. The grid always serializes to a valid circuit
// (arity-correct placements, measurements terminal per line).

import {
    BackendInfo, CircuitJson, GateName, GateOpJson, N_QUBITS, PARAM_COUNT,
} from "./types.js";

export interface Cell {
    column: number;
    qubit: number;
}

/** One item dropped on the grid. A cx occupies two rows of one column. */
export interface Placed {
    kind: "gate" | "cx" | "measure";
    name: GateName | "measure";
    params: number[];
    column: number;
    qubit: number;        // the row the item was dropped on (cx: control)
    target?: number;      // cx only
}

export type PlacementErrorReason = "occupied" | "measurement-before-gate" | "bad-cell";

export class PlacementError extends Error {
    reason: PlacementErrorReason;

    constructor(reason: PlacementErrorReason, message: string) {
        super(message);
        this.reason = reason;
    }
}

export interface TopologyFlag {
    column: number;
    control: number;
    target: number;
    message: string;
}

export class ComposerGrid {
    readonly nQubits = N_QUBITS;
    items: Placed[] = [];

    private occupant(cell: Cell): Placed | undefined {
        return this.items.find(
            (p) =>
                p.column === cell.column &&
                (p.qubit === cell.qubit || p.target === cell.qubit),
        );
    }

    private checkCell(cell: Cell): void {
        if (
            cell.column < 0 ||
            cell.qubit < 0 ||
            cell.qubit >= this.nQubits ||
            !Number.isInteger(cell.column) ||
            !Number.isInteger(cell.qubit)
        ) {
            throw new PlacementError("bad-cell", `no such cell (${cell.column}, ${cell.qubit})`);
        }
        if (this.occupant(cell)) {
            throw new PlacementError(
                "occupied",
                `cell (col ${cell.column}, q${cell.qubit}) is already occupied`,
            );
        }
    }

    /** Column of the measurement on a qubit line, or undefined. */
    private measureColumn(qubit: number): number | undefined {
        const m = this.items.find((p) => p.kind === "measure" && p.qubit === qubit);
        return m?.column;
    }

    private checkLineOrder(cell: Cell): void {
        const mc = this.measureColumn(cell.qubit);
        if (mc !== undefined && mc < cell.column) {
            throw new PlacementError(
                "measurement-before-gate",
                `q${cell.qubit} is measured at column ${mc}; gates cannot follow it`,
            );
        }
    }

    placeGate(name: GateName, params: number[], cell: Cell): void {
        if (name === "cx") throw new PlacementError("bad-cell", "use placeCx for cx");
        if (params.length !== PARAM_COUNT[name]) {
            throw new PlacementError("bad-cell", `${name} takes ${PARAM_COUNT[name]} parameter(s)`);
        }
        this.checkCell(cell);
        this.checkLineOrder(cell);
        this.items.push({ kind: "gate", name, params: params.slice(), column: cell.column, qubit: cell.qubit });
    }

    placeCx(control: number, target: number, column: number): void {
        if (control === target) {
            throw new PlacementError("bad-cell", "cx needs two distinct qubit lines");
        }
        this.checkCell({ column, qubit: control });
        this.checkCell({ column, qubit: target });
        this.checkLineOrder({ column, qubit: control });
        this.checkLineOrder({ column, qubit: target });
        this.items.push({ kind: "cx", name: "cx", params: [], column, qubit: control, target });
    }

    placeMeasure(cell: Cell): void {
        this.checkCell(cell);
        if (this.measureColumn(cell.qubit) !== undefined) {
            throw new PlacementError("occupied", `q${cell.qubit} already has a measurement`);
        }
        const later = this.items.some(
            (p) =>
                p.kind !== "measure" &&
                p.column > cell.column &&
                (p.qubit === cell.qubit || p.target === cell.qubit),
        );
        if (later) {
            throw new PlacementError(
                "measurement-before-gate",
                `q${cell.qubit} has gates after column ${cell.column}`,
            );
        }
        this.items.push({ kind: "measure", name: "measure", params: [], column: cell.column, qubit: cell.qubit });
    }

    removeAt(cell: Cell): boolean {
        const hit = this.occupant(cell);
        if (!hit) return false;
        this.items = this.items.filter((p) => p !== hit);
        return true;
    }

    clear(): void {
        this.items = [];
    }

    get columns(): number {
        return this.items.reduce((w, p) => Math.max(w, p.column + 1), 0);
    }

    /** Serialize left to right, top to bottom within a column. */
    toCircuit(): CircuitJson {
        const sorted = this.items
            .slice()
            .sort((a, b) => a.column - b.column || a.qubit - b.qubit);
        const ops: GateOpJson[] = [];
        const measurements = [];
        for (const p of sorted) {
            if (p.kind === "measure") {
                measurements.push({ qubit: p.qubit, clbit: p.qubit });
            } else if (p.kind === "cx") {
                ops.push({ name: "cx", params: [], qubits: [p.qubit, p.target!] });
            } else {
                ops.push({ name: p.name as GateName, params: p.params.slice(), qubits: [p.qubit] });
            }
        }
        return { n_qubits: this.nQubits, n_clbits: this.nQubits, ops, measurements };
    }

    /**
     * Rebuild the grid from a circuit, left-justifying each op into the
     * earliest column that keeps its qubit lines in program order.
     */
    loadCircuit(circuit: CircuitJson): void {
        if (circuit.n_qubits > this.nQubits) {
            throw new PlacementError("bad-cell", `grid has ${this.nQubits} qubit lines`);
        }
        const frontier = new Array(this.nQubits).fill(0);
        const items: Placed[] = [];
        for (const op of circuit.ops) {
            const col = Math.max(...op.qubits.map((q) => frontier[q]));
            if (op.name === "cx") {
                items.push({ kind: "cx", name: "cx", params: [], column: col, qubit: op.qubits[0], target: op.qubits[1] });
            } else {
                items.push({ kind: "gate", name: op.name, params: op.params.slice(), column: col, qubit: op.qubits[0] });
            }
            for (const q of op.qubits) frontier[q] = col + 1;
        }
        for (const m of circuit.measurements) {
            items.push({ kind: "measure", name: "measure", params: [], column: frontier[m.qubit], qubit: m.qubit });
            frontier[m.qubit] += 1;
        }
        this.items = items;
    }

    /**
     * Client-side pre-check of every cx against the backend's directed
     * coupling map, so bad placements get a badge before any run.
     */
    topologyFlags(backend: BackendInfo): TopologyFlag[] {
        const flags: TopologyFlag[] = [];
        for (const p of this.items) {
            if (p.kind !== "cx") continue;
            const allowed = backend.coupling[String(p.qubit)] ?? [];
            if (!allowed.includes(p.target!)) {
                flags.push({
                    column: p.column,
                    control: p.qubit,
                    target: p.target!,
                    message: `cx q[${p.qubit}] -> q[${p.target}] is not a coupling of ${backend.name}`,
                });
            }
        }
        return flags;
    }
}
