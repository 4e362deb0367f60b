/* tslint:disable */
/* eslint-disable */

/**
 * Mean-vs-median asymptotic relative efficiency over a fractional-parameter
 * grid, interleaved `[alpha0, are0, ...]`.
 */
export function are_curve(from: number, to: number, points: number): Float64Array;

/**
 * The fractional parameter where the mean and median tie in efficiency.
 */
export function are_cutoff(): number;

/**
 * Density curve as interleaved `[x0, y0, x1, y1, ...]`. Points where the
 * series leaves its supported domain come back as NaN so the plot can gap.
 */
export function density_curve(variant: string, alpha: number, rho: number, mu: number, from: number, to: number, points: number): Float64Array;

/**
 * Draw `n` seeded samples, histogram them, refit the parameters, and return
 * everything as a JSON string:
 * `{"histogram": {"edges": [...], "density": [...]}, "fit": {...},
 *   "curve": [x0, y0, ...], "n": n, "seed": seed}`.
 */
export function sample_and_fit(variant: string, alpha: number, rho: number, mu: number, n: number, seed: number, bins: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly are_curve: (a: number, b: number, c: number) => [number, number, number, number];
    readonly density_curve: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number, number];
    readonly sample_and_fit: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number, number];
    readonly are_cutoff: () => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
