// Typed client for the simulator service's /v1 endpoints.

import {
    BackendInfo, CircuitJson, ParseDiagnostic, RunResponse, RunViolation,
} from "./types.js";

export interface RunRequest {
    circuit?: CircuitJson;
    qasm?: string;
    backend: string;
    shots: number;
    seed?: number;
    noise: "off" | "preset";
}

export class ApiError extends Error {
    status: number;
    diagnostic?: ParseDiagnostic;
    violations?: RunViolation[];

    constructor(status: number, message: string) {
        super(message);
        this.status = status;
    }
}

async function raiseFor(resp: Response): Promise<never> {
    let body: any = {};
    try {
        body = await resp.json();
    } catch {
        // non-JSON error body; fall through with the status line only
    }
    const err = new ApiError(resp.status, body.message ?? `HTTP ${resp.status}`);
    if (resp.status === 422 && typeof body.line === "number") {
        err.diagnostic = { message: body.message, line: body.line, column: body.column };
    }
    if (resp.status === 409 && Array.isArray(body.violations)) {
        err.violations = body.violations;
    }
    throw err;
}

export class ApiClient {
    constructor(readonly baseUrl: string = "http://127.0.0.1:8742") {}

    async parseQasm(qasm: string): Promise<CircuitJson> {
        const resp = await fetch(`${this.baseUrl}/v1/parse`, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify({ qasm }),
        });
        if (!resp.ok) await raiseFor(resp);
        return resp.json();
    }

    async run(req: RunRequest): Promise<RunResponse> {
        const resp = await fetch(`${this.baseUrl}/v1/run`, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify(req),
        });
        if (!resp.ok) await raiseFor(resp);
        return resp.json();
    }

    async backends(): Promise<BackendInfo[]> {
        const resp = await fetch(`${this.baseUrl}/v1/backends`);
        if (!resp.ok) await raiseFor(resp);
        return resp.json();
    }
}
