// Browser composer: drag gates from the palette onto five qubit lines,
// validate against the selected backend, run on the service, and compare
// the sampled histogram with the ideal probabilities.

import { ApiClient, ApiError } from "./api.js";
import { layoutBars, renderHistogram } from "./histogram.js";
import { ComposerGrid, PlacementError } from "./model.js";
import { emitQasm } from "./qasm.js";
import {
    BackendInfo, GateName, N_QUBITS, PARAM_COUNT, SHOT_CHOICES, SINGLE_QUBIT_GATES,
} from "./types.js";

const GRID_COLUMNS = 12;

const api = new ApiClient(
    (window as any).QXEMU_SERVICE_URL ?? "http://127.0.0.1:8742",
);
const grid = new ComposerGrid();

let backends: BackendInfo[] = [];
let runToken = 0; // cancel-and-replace: only the latest run may render

const $ = (id: string) => document.getElementById(id)!;

function selectedBackend(): BackendInfo | undefined {
    const name = ($("backend") as HTMLSelectElement).value;
    return backends.find((b) => b.name === name);
}

function setStatus(text: string, isError = false): void {
    const el = $("status");
    el.textContent = text;
    el.className = isError ? "status error" : "status";
}

function parseAngles(name: GateName): number[] | null {
    const n = PARAM_COUNT[name];
    if (n === 0) return [];
    const raw = window.prompt(`${name} angles (${n} value(s), radians, comma-separated)`, "0");
    if (raw === null) return null;
    const parts = raw.split(",").map((s) => Number(s.trim()));
    if (parts.length !== n || parts.some((x) => !Number.isFinite(x))) {
        setStatus(`${name} needs ${n} finite angle(s)`, true);
        return null;
    }
    return parts;
}

function dropItem(name: string, column: number, qubit: number): void {
    try {
        if (name === "measure") {
            grid.placeMeasure({ column, qubit });
        } else if (name === "cx") {
            const raw = window.prompt(`cx control q[${qubit}]: target qubit line (0-4)?`);
            if (raw === null) return;
            grid.placeCx(qubit, Number(raw), column);
        } else {
            const params = parseAngles(name as GateName);
            if (params === null) return;
            grid.placeGate(name as GateName, params, { column, qubit });
        }
        setStatus("");
    } catch (err) {
        if (err instanceof PlacementError) setStatus(err.message, true);
        else throw err;
    }
    refresh();
}

function renderGrid(): void {
    const table = $("grid");
    table.textContent = "";
    const backend = selectedBackend();
    const flags = backend ? grid.topologyFlags(backend) : [];

    for (let q = 0; q < N_QUBITS; q++) {
        const row = document.createElement("tr");
        const head = document.createElement("th");
        head.textContent = `q[${q}]`;
        row.appendChild(head);
        for (let col = 0; col < GRID_COLUMNS; col++) {
            const cell = document.createElement("td");
            cell.className = "cell";
            const item = grid.items.find(
                (p) => p.column === col && (p.qubit === q || p.target === q),
            );
            if (item) {
                cell.classList.add("filled");
                if (item.kind === "cx") {
                    cell.textContent = item.qubit === q ? "●" : "⊕"; // control dot / target
                    cell.title = `cx q[${item.qubit}],q[${item.target}]`;
                } else if (item.kind === "measure") {
                    cell.textContent = "M";
                } else {
                    cell.textContent = item.name;
                    if (item.params.length > 0) {
                        cell.title = `${item.name}(${item.params.join(", ")})`;
                    }
                }
                const flag = flags.find((f) => f.column === col && (f.control === q || f.target === q));
                if (flag) {
                    cell.classList.add("violation");
                    cell.title = flag.message;
                }
                cell.addEventListener("click", () => {
                    grid.removeAt({ column: col, qubit: q });
                    refresh();
                });
            } else {
                cell.addEventListener("dragover", (ev) => ev.preventDefault());
                cell.addEventListener("drop", (ev) => {
                    ev.preventDefault();
                    const name = ev.dataTransfer?.getData("text/gate");
                    if (name) dropItem(name, col, q);
                });
            }
            row.appendChild(cell);
        }
        table.appendChild(row);
    }

    const badge = $("violations");
    badge.textContent = flags.map((f) => f.message).join("; ");
    badge.style.display = flags.length > 0 ? "block" : "none";
}

function refresh(): void {
    renderGrid();
    ($("qasm") as HTMLTextAreaElement).value = emitQasm(grid.toCircuit());
}

async function runCurrent(): Promise<void> {
    const backend = selectedBackend();
    if (!backend) return;
    const flags = grid.topologyFlags(backend);
    const override = ($("override") as HTMLInputElement).checked;
    if (flags.length > 0 && !override) {
        setStatus(`blocked before submission: ${flags[0].message} (check "submit anyway" to override)`, true);
        return;
    }
    const seedText = ($("seed") as HTMLInputElement).value.trim();
    const token = ++runToken;
    setStatus("running...");
    try {
        const resp = await api.run({
            circuit: grid.toCircuit(),
            backend: backend.name,
            shots: Number(($("shots") as HTMLSelectElement).value),
            noise: ($("noise") as HTMLSelectElement).value as "off" | "preset",
            ...(seedText === "" ? {} : { seed: Number(seedText) }),
        });
        if (token !== runToken) return; // a newer run replaced this one
        ($("seed") as HTMLInputElement).value = String(resp.seed); // rerun reproducibly
        renderHistogram($("histogram"), layoutBars(resp.histogram, resp.statevector_probs));
        setStatus(`done: ${resp.histogram.shots} shots, seed ${resp.seed}`);
    } catch (err) {
        if (token !== runToken) return;
        if (err instanceof ApiError && err.violations) {
            setStatus(`rejected by service: ${err.violations.map((v) => v.message).join("; ")}`, true);
        } else if (err instanceof ApiError && err.diagnostic) {
            const d = err.diagnostic;
            setStatus(`parse error at line ${d.line}, column ${d.column}: ${d.message}`, true);
        } else {
            setStatus(String(err), true);
        }
    }
}

async function applyQasm(): Promise<void> {
    const text = ($("qasm") as HTMLTextAreaElement).value;
    try {
        const circuit = await api.parseQasm(text);
        grid.loadCircuit(circuit);
        setStatus("");
        refresh();
    } catch (err) {
        if (err instanceof ApiError && err.diagnostic) {
            const d = err.diagnostic;
            setStatus(`line ${d.line}, column ${d.column}: ${d.message}`, true);
        } else {
            setStatus(String(err), true);
        }
        // grid unchanged on parse failure
    }
}

function buildPalette(): void {
    const palette = $("palette");
    for (const name of [...SINGLE_QUBIT_GATES, "cx", "measure"]) {
        const chip = document.createElement("span");
        chip.className = "chip";
        chip.textContent = name === "measure" ? "M" : name;
        chip.title = name;
        chip.draggable = true;
        chip.addEventListener("dragstart", (ev) => {
            ev.dataTransfer?.setData("text/gate", name);
        });
        palette.appendChild(chip);
    }
}

function buildControls(): void {
    const shots = $("shots") as HTMLSelectElement;
    for (const n of SHOT_CHOICES) {
        const opt = document.createElement("option");
        opt.value = String(n);
        opt.textContent = String(n);
        if (n === 8192) opt.selected = true;
        shots.appendChild(opt);
    }
    $("run").addEventListener("click", () => void runCurrent());
    $("apply-qasm").addEventListener("click", () => void applyQasm());
    $("clear").addEventListener("click", () => {
        grid.clear();
        refresh();
    });
    $("backend").addEventListener("change", renderGrid);
}

async function init(): Promise<void> {
    buildPalette();
    buildControls();
    try {
        backends = await api.backends();
    } catch {
        setStatus("service unreachable; start it with: python3 -m qxemu.service", true);
        backends = [];
    }
    const select = $("backend") as HTMLSelectElement;
    for (const b of backends) {
        const opt = document.createElement("option");
        opt.value = b.name;
        opt.textContent = `${b.name} (${b.n_qubits} qubits)`;
        select.appendChild(opt);
    }
    refresh();
}

void init();
