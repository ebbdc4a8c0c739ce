/**
 * DOM layer: wires the pure editor/plan/trace modules to the page.
 *
 * All state lives in one EditorState value plus a little UI chrome state;
 * every mutation goes through an editor operation and triggers a full
 * re-render of the affected panel. No geometry decisions happen here.
 */

import { ApiClient } from "./api.js";
import {
  exportProject,
  loadProject,
  newEditor,
  paintCells,
  removeDoorOverride,
  resizeGrid,
  roomsInUse,
  setActiveRoom,
  setConstraint,
  setDoorDefault,
  setDoorOverride,
  setOptions,
  setResult,
  toProjectDoc,
  DEFAULT_GRID,
  MAX_GRID,
  type CellRect,
  type EditorState,
} from "./editor.js";
import {
  BOUNDARY_ID,
  type ApiErrorBody,
  type ExampleDoc,
  type ProjectDoc,
  type ViolationDoc,
} from "./model.js";
import { planSvg } from "./plan.js";
import { traceViews } from "./trace.js";

const ROOM_COLORS = [
  "#e8c8c8", "#c8e0e8", "#d2e8c8", "#e8e2c0", "#dcc8e8",
  "#c8e8dd", "#e8d2c8", "#ccd2e8", "#e0e8c8", "#e8c8dc",
  "#c8d8d0", "#d8d0c8", "#d0c8d8", "#c8e8c8", "#e8dcc8", "#c8cce0",
];

function roomColor(id: number): string {
  return ROOM_COLORS[(id - 1) % ROOM_COLORS.length]!;
}

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function defaultApiBase(): string {
  const param = new URLSearchParams(location.search).get("api");
  if (param) return param;
  // Same origin when served by a reverse proxy, localhost default otherwise.
  if (location.origin.startsWith("http")) return location.origin;
  return "http://127.0.0.1:8000";
}

let state: EditorState = newEditor(DEFAULT_GRID, DEFAULT_GRID);
let api = new ApiClient(defaultApiBase());
let dragStart: { r: number; c: number } | null = null;
let dragEnd: { r: number; c: number } | null = null;
let lastRawResult: string | null = null;
let highlightedRooms = new Set<number>();
let validateTimer: number | undefined;

function apply(next: EditorState, options?: { keepResult?: boolean }): void {
  const changedGrid = next.cells !== state.cells;
  state = next;
  if (changedGrid && !options?.keepResult) {
    highlightedRooms = new Set();
  }
  renderAll();
  if (changedGrid) scheduleValidate();
}

// --- grid painting ---------------------------------------------------------

function renderGrid(): void {
  const grid = el<HTMLDivElement>("grid");
  grid.style.gridTemplateColumns = `repeat(${state.cols}, 1fr)`;
  grid.replaceChildren();
  const sel = currentSelection();
  for (let r = 0; r < state.rows; r++) {
    for (let c = 0; c < state.cols; c++) {
      const id = state.cells[r]![c]!;
      const cell = document.createElement("div");
      cell.className = "cell";
      cell.dataset.r = String(r);
      cell.dataset.c = String(c);
      if (id > 0) {
        cell.style.background = roomColor(id);
        cell.textContent = String(id);
        if (highlightedRooms.has(id)) cell.classList.add("bad");
      }
      if (sel && r >= sel.r0 && r <= sel.r1 && c >= sel.c0 && c <= sel.c1) {
        cell.classList.add("selecting");
      }
      grid.appendChild(cell);
    }
  }
}

function currentSelection(): CellRect | null {
  if (!dragStart || !dragEnd) return null;
  return {
    r0: Math.min(dragStart.r, dragEnd.r),
    c0: Math.min(dragStart.c, dragEnd.c),
    r1: Math.max(dragStart.r, dragEnd.r),
    c1: Math.max(dragStart.c, dragEnd.c),
  };
}

function cellAt(event: MouseEvent): { r: number; c: number } | null {
  const target = event.target as HTMLElement;
  if (!target.classList.contains("cell")) return null;
  return { r: Number(target.dataset.r), c: Number(target.dataset.c) };
}

function wireGrid(): void {
  const grid = el<HTMLDivElement>("grid");
  grid.addEventListener("mousedown", (ev) => {
    const cell = cellAt(ev);
    if (!cell) return;
    ev.preventDefault();
    dragStart = cell;
    dragEnd = cell;
    renderGrid();
  });
  grid.addEventListener("mouseover", (ev) => {
    if (!dragStart) return;
    const cell = cellAt(ev);
    if (!cell) return;
    dragEnd = cell;
    renderGrid();
  });
  window.addEventListener("mouseup", () => {
    const sel = currentSelection();
    dragStart = null;
    dragEnd = null;
    if (sel) {
      apply(paintCells(state, sel, state.activeRoom));
    }
  });
}

// --- palette and constraint table ------------------------------------------

function renderPalette(): void {
  const palette = el<HTMLDivElement>("palette");
  palette.replaceChildren();
  const known = new Set([
    ...roomsInUse(state),
    ...Object.keys(state.constraints).map(Number),
  ]);
  const ids = [...known].sort((a, b) => a - b);
  const next = (ids[ids.length - 1] ?? 0) + 1;
  for (const id of ids) {
    const btn = document.createElement("button");
    btn.textContent = String(id);
    btn.style.background = roomColor(id);
    btn.className = state.activeRoom === id ? "room-btn active" : "room-btn";
    btn.addEventListener("click", () => apply(setActiveRoom(state, id)));
    palette.appendChild(btn);
  }
  const add = document.createElement("button");
  add.textContent = `+ room ${next}`;
  add.className = "room-btn";
  add.addEventListener("click", () => apply(setActiveRoom(state, next)));
  palette.appendChild(add);
  const erase = document.createElement("button");
  erase.textContent = "erase";
  erase.className = state.activeRoom === 0 ? "room-btn active" : "room-btn";
  erase.addEventListener("click", () => apply({ ...state, activeRoom: 0 }));
  palette.appendChild(erase);
}

function numberInput(
  value: number | null,
  placeholder: string,
  onChange: (v: number | null) => void,
): HTMLInputElement {
  const input = document.createElement("input");
  input.type = "number";
  input.step = "any";
  input.placeholder = placeholder;
  if (value !== null) input.value = String(value);
  input.addEventListener("change", () => {
    const v = input.value.trim();
    onChange(v === "" ? null : Number(v));
  });
  return input;
}

function renderConstraints(): void {
  const tbody = el<HTMLTableSectionElement>("constraint-rows");
  tbody.replaceChildren();
  for (const id of roomsInUse(state)) {
    const row = state.constraints[id]!;
    const tr = document.createElement("tr");
    if (highlightedRooms.has(id)) tr.classList.add("bad");
    const name = document.createElement("td");
    name.textContent = String(id);
    name.style.background = roomColor(id);
    tr.appendChild(name);
    const fields: [number | null, string, (v: number | null) => void][] = [
      [row.minWidth, "min w", (v) => patch(id, { minWidth: v ?? 1 })],
      [row.arMin, "ar min", (v) => patch(id, { arMin: v ?? 0.5 })],
      [row.arMax, "ar max", (v) => patch(id, { arMax: v ?? 2 })],
      [row.maxWidth, "none", (v) => patch(id, { maxWidth: v })],
      [row.maxHeight, "none", (v) => patch(id, { maxHeight: v })],
    ];
    for (const [value, placeholder, onChange] of fields) {
      const td = document.createElement("td");
      td.appendChild(numberInput(value, placeholder, onChange));
      tr.appendChild(td);
    }
    tbody.appendChild(tr);
  }

  function patch(
    id: number,
    p: Partial<(typeof state.constraints)[number]>,
  ): void {
    apply(setConstraint(state, id, p), { keepResult: true });
  }
}

function renderDoorAndOptions(): void {
  el<HTMLInputElement>("door-default").value = String(state.door.defaultMin);
  el<HTMLInputElement>("opt-iterations").value = String(
    state.options.maxIterations,
  );
  el<HTMLInputElement>("opt-tol").value = String(state.options.tol);
  el<HTMLInputElement>("opt-prune").checked = state.options.pruneSinkEdges;

  const list = el<HTMLUListElement>("door-overrides");
  list.replaceChildren();
  for (const ov of state.door.overrides) {
    const li = document.createElement("li");
    const name = (v: number) =>
      v < 0 ? ["", "N", "E", "S", "W"][-v]! : String(v);
    li.textContent = `${name(ov.a)} ↔ ${name(ov.b)}: ${ov.width} `;
    const del = document.createElement("button");
    del.textContent = "×";
    del.addEventListener("click", () =>
      apply(removeDoorOverride(state, ov.a, ov.b), { keepResult: true }),
    );
    li.appendChild(del);
    list.appendChild(li);
  }
}

function parseEndpoint(raw: string): number | null {
  const text = raw.trim().toUpperCase();
  if (text in BOUNDARY_ID) return BOUNDARY_ID[text as keyof typeof BOUNDARY_ID];
  const id = Number(text);
  return Number.isInteger(id) && id > 0 ? id : null;
}

// --- validation badge ------------------------------------------------------

function scheduleValidate(): void {
  window.clearTimeout(validateTimer);
  validateTimer = window.setTimeout(() => void runValidate(), 250);
}

async function runValidate(): Promise<void> {
  const badge = el<HTMLSpanElement>("badge");
  const messages = el<HTMLUListElement>("violations");
  const doc = toProjectDoc(state);
  const result = await api.validate({ matrix: doc.matrix });
  const solveBtn = el<HTMLButtonElement>("solve");
  if (!result.ok) {
    badge.className = "badge off";
    badge.textContent = "service unreachable";
    messages.replaceChildren();
    solveBtn.disabled = true;
    return;
  }
  const violations = result.value.violations;
  renderViolations(violations);
  if (violations.length === 0) {
    badge.className = "badge ok";
    badge.textContent = "arrangement ok";
    solveBtn.disabled = false;
  } else {
    badge.className = "badge bad";
    badge.textContent = `${violations.length} problem(s)`;
    solveBtn.disabled = true;
  }
}

function renderViolations(violations: ViolationDoc[]): void {
  const messages = el<HTMLUListElement>("violations");
  messages.replaceChildren();
  for (const v of violations) {
    const li = document.createElement("li");
    li.textContent = `${v.rule}: ${v.message}`;
    messages.appendChild(li);
  }
}

// --- solving and result panels ---------------------------------------------

async function runSolve(): Promise<void> {
  const status = el<HTMLDivElement>("solve-status");
  status.textContent = "solving…";
  highlightedRooms = new Set();
  const outcome = await api.solve(toProjectDoc(state));
  if (outcome === null) return; // superseded by a newer request
  if (!outcome.ok) {
    lastRawResult = null;
    apply(setResult(state, null), { keepResult: true });
    showError(outcome.error);
    return;
  }
  lastRawResult = outcome.value.raw;
  status.textContent = "";
  apply(setResult(state, outcome.value.result), { keepResult: true });
}

function showError(error: ApiErrorBody): void {
  const status = el<HTMLDivElement>("solve-status");
  let text = `${error.code}: ${error.message}`;
  const details = error.details as Record<string, unknown> | null;
  if (error.code === "VALIDATION" && details && Array.isArray(details.violations)) {
    const violations = details.violations as ViolationDoc[];
    renderViolations(violations);
    for (const v of violations) {
      const match = /room (\d+)/.exec(v.message);
      if (match) highlightedRooms.add(Number(match[1]));
    }
  } else if (error.code === "INFEASIBLE" && details) {
    text += ` (network: ${String(details.network)}, iteration ${String(details.iteration)})`;
  }
  status.textContent = text;
  status.className = "error";
  renderGrid();
  renderConstraints();
}

function renderResult(): void {
  const host = el<HTMLDivElement>("plan");
  const tracePanel = el<HTMLDivElement>("trace");
  const result = state.lastResult;
  if (!result) {
    host.replaceChildren();
    tracePanel.replaceChildren();
    return;
  }

  if (result.floorplan) {
    host.innerHTML = planSvg(result.floorplan);
  } else {
    host.textContent =
      "no placement: the solver hit its iteration cap before every room fit its aspect band";
  }

  tracePanel.replaceChildren();
  const heading = document.createElement("h3");
  heading.textContent = `trace (${result.trace.status.toLowerCase()}, ${result.trace.iterations.length} iteration(s))`;
  tracePanel.appendChild(heading);
  for (const view of traceViews(result.trace)) {
    const block = document.createElement("details");
    if (view.index === result.trace.iterations.length) block.open = true;
    const summary = document.createElement("summary");
    summary.textContent = `iteration ${view.index}: envelope ${view.envelope}, violators: ${view.violators}`;
    block.appendChild(summary);
    const table = document.createElement("table");
    table.innerHTML =
      "<thead><tr><th>room</th><th>min w</th><th>width</th>" +
      "<th>min h</th><th>height</th></tr></thead>";
    const tbody = document.createElement("tbody");
    for (const r of view.rooms) {
      const tr = document.createElement("tr");
      if (r.violator) tr.classList.add("bad");
      tr.innerHTML =
        `<td>${r.room}</td><td>${r.minWidth}</td><td>${r.width}</td>` +
        `<td>${r.minHeight}</td><td>${r.height}</td>`;
      tbody.appendChild(tr);
    }
    table.appendChild(tbody);
    block.appendChild(table);
    tracePanel.appendChild(block);
  }
}

// --- examples, import, export ----------------------------------------------

async function loadExamples(): Promise<void> {
  const select = el<HTMLSelectElement>("examples");
  const result = await api.examples();
  if (!result.ok) return;
  select.replaceChildren(new Option("load example…", ""));
  for (const ex of result.value) {
    select.appendChild(new Option(`${ex.name} (${ex.description})`, ex.name));
  }
  select.dataset.loaded = "1";
  select.onchange = () => {
    const found = result.value.find((e: ExampleDoc) => e.name === select.value);
    if (found) {
      lastRawResult = null;
      apply(loadProject(found.project));
    }
    select.value = "";
  };
}

function download(filename: string, text: string, type: string): void {
  const blob = new Blob([text], { type });
  const url = URL.createObjectURL(blob);
  const a = document.createElement("a");
  a.href = url;
  a.download = filename;
  a.click();
  URL.revokeObjectURL(url);
}

function wireToolbar(): void {
  el<HTMLButtonElement>("solve").addEventListener("click", () => void runSolve());
  el<HTMLButtonElement>("export-project").addEventListener("click", () =>
    download("project.json", exportProject(state), "application/json"),
  );
  el<HTMLButtonElement>("export-result").addEventListener("click", () => {
    if (lastRawResult) download("result.json", lastRawResult, "application/json");
  });
  el<HTMLButtonElement>("export-svg").addEventListener("click", () => {
    if (state.lastResult?.floorplan) {
      download("plan.svg", planSvg(state.lastResult.floorplan), "image/svg+xml");
    }
  });
  el<HTMLInputElement>("import-file").addEventListener("change", async (ev) => {
    const input = ev.target as HTMLInputElement;
    const file = input.files?.[0];
    if (!file) return;
    try {
      const doc = JSON.parse(await file.text()) as ProjectDoc;
      lastRawResult = null;
      apply(loadProject(doc));
    } catch (err) {
      el<HTMLDivElement>("solve-status").textContent = `import failed: ${String(err)}`;
    }
    input.value = "";
  });

  const rowsInput = el<HTMLInputElement>("grid-rows");
  const colsInput = el<HTMLInputElement>("grid-cols");
  rowsInput.max = colsInput.max = String(MAX_GRID);
  const onResize = () =>
    apply(resizeGrid(state, Number(rowsInput.value), Number(colsInput.value)));
  rowsInput.addEventListener("change", onResize);
  colsInput.addEventListener("change", onResize);

  el<HTMLInputElement>("door-default").addEventListener("change", (ev) => {
    apply(setDoorDefault(state, Number((ev.target as HTMLInputElement).value)), {
      keepResult: true,
    });
  });
  el<HTMLButtonElement>("add-override").addEventListener("click", () => {
    const a = parseEndpoint(el<HTMLInputElement>("override-a").value);
    const b = parseEndpoint(el<HTMLInputElement>("override-b").value);
    const w = Number(el<HTMLInputElement>("override-w").value);
    if (a !== null && b !== null && w > 0) {
      apply(setDoorOverride(state, a, b, w), { keepResult: true });
    }
  });
  el<HTMLInputElement>("opt-iterations").addEventListener("change", (ev) => {
    apply(
      setOptions(state, {
        maxIterations: Number((ev.target as HTMLInputElement).value),
      }),
      { keepResult: true },
    );
  });
  el<HTMLInputElement>("opt-tol").addEventListener("change", (ev) => {
    apply(setOptions(state, { tol: Number((ev.target as HTMLInputElement).value) }), {
      keepResult: true,
    });
  });
  el<HTMLInputElement>("opt-prune").addEventListener("change", (ev) => {
    apply(
      setOptions(state, {
        pruneSinkEdges: (ev.target as HTMLInputElement).checked,
      }),
      { keepResult: true },
    );
  });

  const baseInput = el<HTMLInputElement>("api-base");
  baseInput.value = api.base;
  baseInput.addEventListener("change", () => {
    api = new ApiClient(baseInput.value);
    void loadExamples();
    scheduleValidate();
  });
}

function renderAll(): void {
  el<HTMLInputElement>("grid-rows").value = String(state.rows);
  el<HTMLInputElement>("grid-cols").value = String(state.cols);
  renderGrid();
  renderPalette();
  renderConstraints();
  renderDoorAndOptions();
  renderResult();
}

export function start(): void {
  wireGrid();
  wireToolbar();
  renderAll();
  void loadExamples();
  scheduleValidate();
}

start();
