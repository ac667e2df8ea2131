/* tslint:disable */
/* eslint-disable */

/**
 * Indicator report (JSON) for an events CSV and a JSON manifest.
 */
export function analyze_log(events_csv: string, manifest_json: string): string;

/**
 * Plot series CSV for an events CSV and a JSON manifest. A `sample_dt`
 * of zero or less samples at breakpoints only.
 */
export function plot_log(events_csv: string, manifest_json: string, sample_dt: number): string;

/**
 * Integral functions and completion times of a reduced operation: one
 * input of cost `re` at `t_r` and one output of cost `pe` at `t_p`.
 */
export function reduced_operation(re: number, t_r: number, pe: number, t_p: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly analyze_log: (a: number, b: number, c: number, d: number) => [number, number];
    readonly plot_log: (a: number, b: number, c: number, d: number, e: number) => [number, number];
    readonly reduced_operation: (a: number, b: number, c: number, d: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
