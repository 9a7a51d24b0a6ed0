/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const scanJson: (a: number, b: number, c: number) => [number, number, number, number];
export const stateJson: (a: number, b: number, c: number) => [number, number];
export const trajectoryJson: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
