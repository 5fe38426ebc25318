/* tslint:disable */
/* eslint-disable */

/**
 * Fits `Omega` (rad/s) within `[lo, hi]` to measured `M -> M + 1` lines of
 * level `n`, given in Hz.
 */
export function identify(measured_hz: Float64Array, spin: number, offset: number, b0: number, g: number, gbar: number, n: number, lo: number, hi: number): string;

/**
 * Level curves `E_{M,n}` over `Gbar` in `[0, fraction * Gbar_crit]` with
 * their crossings. `omega` in rad/s, `offset` in m, `g` in T/m.
 */
export function level_curves(spin: number, omega: number, offset: number, g: number, fraction: number, n_max: number, points: number): string;

/**
 * `M -> M + 1` lines of level `n` (Hz, ascending) in the field
 * `b0 + g x + gbar x^2`.
 */
export function line_spectrum(spin: number, omega: number, offset: number, b0: number, g: number, gbar: number, n: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly identify: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number, j: number) => [number, number, number, number];
    readonly level_curves: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
    readonly line_spectrum: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
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
