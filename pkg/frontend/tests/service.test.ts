// End-to-end composer loop against a live service instance: build the Bell
// circuit by placements, round-trip it through the QASM panel path, run it
// with the noise preset, and exercise the topology pre-check + 409 path.

import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { ChildProcess, spawn } from "node:child_process";

import { ApiClient, ApiError } from "../src/api.js";
import { layoutBars, splitDominant } from "../src/histogram.js";
import { ComposerGrid } from "../src/model.js";
import { emitQasm } from "../src/qasm.js";

const PORT = 8931;
const api = new ApiClient(`http://127.0.0.1:${PORT}`);
let server: ChildProcess;

async function waitForService(): Promise<void> {
    for (let i = 0; i < 100; i++) {
        try {
            await api.backends();
            return;
        } catch {
            await new Promise((r) => setTimeout(r, 150));
        }
    }
    throw new Error(`service did not come up on port ${PORT}`);
}

beforeAll(async () => {
    server = spawn(
        "python3",
        ["-m", "uvicorn", "qxemu.service:app", "--port", String(PORT), "--log-level", "warning"],
        { stdio: "ignore" },
    );
    await waitForService();
});

afterAll(() => {
    server.kill();
});

function bellGrid(): ComposerGrid {
    const grid = new ComposerGrid();
    grid.placeGate("h", [], { column: 0, qubit: 1 });
    grid.placeCx(1, 0, 1);
    grid.placeMeasure({ column: 2, qubit: 0 });
    grid.placeMeasure({ column: 2, qubit: 1 });
    return grid;
}

describe("composer loop", () => {
    it("Bell grid at 8192 shots with noise preset: two tall bars, two small bars", async () => {
        const resp = await api.run({
            circuit: bellGrid().toCircuit(),
            backend: "ibmqx4",
            shots: 8192,
            seed: 20260824,
            noise: "preset",
        });
        const bars = layoutBars(resp.histogram, resp.statevector_probs);
        const { dominant, minor } = splitDominant(bars);
        expect(dominant.map((b) => b.key).sort()).toEqual(["00000", "00011"]);
        expect(minor.length).toBeGreaterThanOrEqual(2);
        expect(minor.map((b) => b.key)).toContain("00001");
        expect(minor.map((b) => b.key)).toContain("00010");
        // theory overlay markers sit at the ideal halves
        expect(resp.statevector_probs["00000"]).toBeCloseTo(0.5, 10);
        expect(resp.statevector_probs["00011"]).toBeCloseTo(0.5, 10);
        expect(resp.seed).toBe(20260824);
    });

    it("reruns with the preserved seed byte-identically", async () => {
        const req = {
            circuit: bellGrid().toCircuit(),
            backend: "ibmqx4" as const,
            shots: 1024,
            noise: "preset" as const,
        };
        const first = await api.run(req);
        const second = await api.run({ ...req, seed: first.seed });
        expect(second.histogram).toEqual(first.histogram);
    });

    it("QASM panel round-trips the grid through /v1/parse", async () => {
        const grid = bellGrid();
        const circuit = grid.toCircuit();
        const parsed = await api.parseQasm(emitQasm(circuit));
        expect(parsed).toEqual(circuit);
        const reloaded = new ComposerGrid();
        reloaded.loadCircuit(parsed);
        expect(reloaded.toCircuit()).toEqual(circuit);
    });

    it("typing the x q[0] variant updates the grid to three gates", async () => {
        const text = [
            "OPENQASM 2.0;",
            'include "qelib1.inc";',
            "qreg q[5];",
            "creg c[5];",
            "x q[0];",
            "h q[1];",
            "cx q[1],q[0];",
            "measure q[0] -> c[0];",
            "measure q[1] -> c[1];",
        ].join("\n");
        const grid = new ComposerGrid();
        grid.loadCircuit(await api.parseQasm(text));
        expect(grid.items.filter((p) => p.kind !== "measure")).toHaveLength(3);
    });

    it("malformed text yields a line/column diagnostic and leaves the grid alone", async () => {
        const grid = bellGrid();
        const before = grid.toCircuit();
        let diagnostic;
        try {
            grid.loadCircuit(await api.parseQasm("qreg q[5];\ncreg c[5];\nfrobnicate q[0];\n"));
        } catch (err) {
            expect(err).toBeInstanceOf(ApiError);
            diagnostic = (err as ApiError).diagnostic;
        }
        expect(diagnostic?.line).toBe(3);
        expect(diagnostic?.column).toBeGreaterThanOrEqual(1);
        expect(grid.toCircuit()).toEqual(before);
    });

    it("cx q[0] -> q[2] on ibmqx4 is flagged before submission and 409s on override", async () => {
        const grid = new ComposerGrid();
        grid.placeCx(0, 2, 0);
        const backends = await api.backends();
        const ibmqx4 = backends.find((b) => b.name === "ibmqx4")!;
        // pre-check badge appears without any network run
        expect(grid.topologyFlags(ibmqx4)).toHaveLength(1);
        // user override submits anyway and surfaces the service's rejection
        const err = await api
            .run({ circuit: grid.toCircuit(), backend: "ibmqx4", shots: 1, noise: "off" })
            .then(() => null, (e) => e as ApiError);
        expect(err?.status).toBe(409);
        expect(err?.violations?.[0].kind).toBe("cnot-direction");
    });

    it("shots=1 on a coin-flip grid gives a single five-bit bar", async () => {
        const grid = new ComposerGrid();
        grid.placeGate("h", [], { column: 0, qubit: 0 });
        grid.placeMeasure({ column: 1, qubit: 0 });
        const resp = await api.run({
            circuit: grid.toCircuit(),
            backend: "custom",
            shots: 1,
            seed: 3,
            noise: "off",
        });
        const keys = Object.keys(resp.histogram.counts);
        expect(keys).toHaveLength(1);
        expect(["00000", "00001"]).toContain(keys[0]);
        expect(resp.histogram.counts[keys[0]]).toBe(1);
    });
});
