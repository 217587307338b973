// Histogram layout and rendering: count bars with the ideal probabilities
// drawn as outline markers on top, so sampled vs exact can be compared.

import { HistogramJson } from "./types.js";

export interface Bar {
    key: string;
    count: number;
    fraction: number;      // count / shots
    theory: number | null; // ideal probability, null if the key never appears ideally
}

/**
 * Merge counts and theory probabilities into one sorted bar list. Keys
 * present only in theory (sampling missed them) get count 0; keys present
 * only in counts (noise) get theory null.
 */
export function layoutBars(
    histogram: HistogramJson,
    theory: Record<string, number>,
): Bar[] {
    const keys = new Set([...Object.keys(histogram.counts), ...Object.keys(theory)]);
    return [...keys].sort().map((key) => ({
        key,
        count: histogram.counts[key] ?? 0,
        fraction: (histogram.counts[key] ?? 0) / histogram.shots,
        theory: key in theory ? theory[key] : null,
    }));
}

/** Bars at or above this fraction of the tallest bar count as dominant. */
const DOMINANT_RATIO = 0.25;

export function splitDominant(bars: Bar[]): { dominant: Bar[]; minor: Bar[] } {
    const top = Math.max(0, ...bars.map((b) => b.fraction));
    const dominant = bars.filter((b) => b.count > 0 && b.fraction >= top * DOMINANT_RATIO);
    const minor = bars.filter((b) => b.count > 0 && b.fraction < top * DOMINANT_RATIO);
    return { dominant, minor };
}

export function renderHistogram(el: HTMLElement, bars: Bar[]): void {
    el.textContent = "";
    const max = Math.max(...bars.map((b) => Math.max(b.fraction, b.theory ?? 0)), 1e-12);
    for (const bar of bars) {
        const row = document.createElement("div");
        row.className = "hist-row";

        const label = document.createElement("span");
        label.className = "hist-key";
        label.textContent = bar.key;
        row.appendChild(label);

        const track = document.createElement("div");
        track.className = "hist-track";

        const fill = document.createElement("div");
        fill.className = "hist-fill";
        fill.style.width = `${(100 * bar.fraction) / max}%`;
        track.appendChild(fill);

        if (bar.theory !== null) {
            const marker = document.createElement("div");
            marker.className = "hist-theory";
            marker.style.left = `${(100 * bar.theory) / max}%`;
            marker.title = `ideal p = ${bar.theory.toFixed(4)}`;
            track.appendChild(marker);
        }
        row.appendChild(track);

        const value = document.createElement("span");
        value.className = "hist-count";
        value.textContent = `${bar.count} (${(100 * bar.fraction).toFixed(2)}%)`;
        row.appendChild(value);

        el.appendChild(row);
    }
}
