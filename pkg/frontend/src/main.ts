// DOM wiring for the inspector. All model numbers on screen come from the
// tappy service; this file only moves them between fetches and elements.

import { ApiClient, ApiError, ServiceUnreachableError, latestOnly } from "./api.js";
import { WHATIF_DEBOUNCE_MS, debounce } from "./debounce.js";
import { formatPercent, formatPercentPrecise, formatPx, formatSize } from "./format.js";
import { fitDevice, hitTest, overflowsDevice, selectableNodes, toView } from "./geometry.js";
import { mmToPx, sizeForRate } from "./sizeFor.js";
import { CanvasStore, walkNodes } from "./state.js";
import type { AnalyzeResponse, DeviceProfile, LayoutDocument } from "./types.js";

const SERVICE_URL = new URLSearchParams(location.search).get("service") ?? "http://127.0.0.1:7317";
const THRESHOLD = 0.95;

const api = new ApiClient(SERVICE_URL);

const el = {
  deviceSelect: document.querySelector<HTMLSelectElement>("#device-select")!,
  filePicker: document.querySelector<HTMLInputElement>("#file-picker")!,
  banner: document.querySelector<HTMLDivElement>("#banner")!,
  badge: document.querySelector<HTMLDivElement>("#overflow-badge")!,
  canvas: document.querySelector<HTMLDivElement>("#canvas")!,
  screen: document.querySelector<HTMLDivElement>("#screen")!,
  panel: document.querySelector<HTMLDivElement>("#panel")!,
  nodeName: document.querySelector<HTMLDivElement>("#node-name")!,
  sizePx: document.querySelector<HTMLSpanElement>("#size-px")!,
  sizeMm: document.querySelector<HTMLSpanElement>("#size-mm")!,
  rate: document.querySelector<HTMLDivElement>("#rate")!,
  verdict: document.querySelector<HTMLSpanElement>("#verdict")!,
  widthSlider: document.querySelector<HTMLInputElement>("#whatif-width")!,
  heightSlider: document.querySelector<HTMLInputElement>("#whatif-height")!,
  whatifLabel: document.querySelector<HTMLSpanElement>("#whatif-label")!,
  resetButton: document.querySelector<HTMLButtonElement>("#whatif-reset")!,
  targetRate: document.querySelector<HTMLInputElement>("#target-rate")!,
  sizeForButton: document.querySelector<HTMLButtonElement>("#size-for")!,
  sizeForMessage: document.querySelector<HTMLSpanElement>("#size-for-message")!,
};

let devices: DeviceProfile[] = [];
let lastAnalysis: AnalyzeResponse | null = null;
const store = new CanvasStore("iphone-16");

function currentDevice(): DeviceProfile {
  return devices.find((d) => d.id === store.current.deviceId) ?? devices[0]!;
}

function showBanner(kind: "error" | "offline", message: string): void {
  el.banner.textContent = message;
  el.banner.className = `banner ${kind}`;
  el.banner.hidden = false;
}

function clearBanner(): void {
  el.banner.hidden = true;
}

function setOffline(offline: boolean): void {
  el.panel.classList.toggle("stale", offline);
  if (offline) showBanner("offline", "service unreachable; values may be stale");
  else clearBanner();
}

// ---------------------------------------------------------------- rendering

function renderCanvas(): void {
  const { document: doc } = store.current;
  el.screen.replaceChildren();
  const device = currentDevice();
  const viewport = el.canvas.getBoundingClientRect();
  const t = fitDevice(device, viewport.width, viewport.height);
  el.screen.style.left = `${t.offsetX}px`;
  el.screen.style.top = `${t.offsetY}px`;
  el.screen.style.width = `${device.logical_width * t.scale}px`;
  el.screen.style.height = `${device.logical_height * t.scale}px`;
  if (doc === null) return;

  el.badge.hidden = !overflowsDevice(doc, device);

  const selectable = new Set(selectableNodes(doc).map((n) => n.id));
  const failing = new Set(
    (lastAnalysis?.elements ?? []).filter((e) => !e.passed).map((e) => e.node_id),
  );
  for (const node of walkNodes(doc.root)) {
    if (node.id === doc.root.id) continue;
    const box = document.createElement("div");
    const v = toView(node.frame, t);
    box.className = "node";
    box.style.left = `${v.x - t.offsetX}px`;
    box.style.top = `${v.y - t.offsetY}px`;
    box.style.width = `${Math.max(v.width, 1)}px`;
    box.style.height = `${Math.max(v.height, 1)}px`;
    box.title = `${node.name} (${formatPx(node.frame.width)} x ${formatPx(node.frame.height)} px)`;
    if (selectable.has(node.id)) box.classList.add("selectable");
    if (failing.has(node.id)) box.classList.add("failing");
    if (node.id === store.current.selectedNodeId) box.classList.add("selected");
    el.screen.appendChild(box);
  }

  const effective = store.effectiveSelection();
  if (effective !== null && store.current.whatIfSize !== null) {
    const { node, widthPx, heightPx } = effective;
    const cx = node.frame.x + node.frame.width / 2;
    const cy = node.frame.y + node.frame.height / 2;
    const overlayFrame = {
      x: cx - widthPx / 2,
      y: cy - heightPx / 2,
      width: widthPx,
      height: heightPx,
    };
    const v = toView(overlayFrame, t);
    const overlay = document.createElement("div");
    overlay.className = "node whatif-overlay";
    overlay.style.left = `${v.x - t.offsetX}px`;
    overlay.style.top = `${v.y - t.offsetY}px`;
    overlay.style.width = `${v.width}px`;
    overlay.style.height = `${v.height}px`;
    el.screen.appendChild(overlay);
  }
}

const refreshPanel = latestOnly(async () => {
  const effective = store.effectiveSelection();
  if (effective === null) {
    el.panel.classList.add("empty");
    return null;
  }
  el.panel.classList.remove("empty");
  const { node, widthPx, heightPx } = effective;
  el.nodeName.textContent = `${node.name} (${node.id})`;
  el.sizePx.textContent = formatSize(widthPx, heightPx, "px");
  const prediction = await api.predictPx(store.current.deviceId, widthPx, heightPx);
  return { prediction, widthPx, heightPx };
});

async function updatePanel(): Promise<void> {
  try {
    const result = await refreshPanel();
    if (result === null) return; // stale or nothing selected
    setOffline(false);
    const { prediction } = result;
    el.sizeMm.textContent = formatSize(prediction.width_mm, prediction.height_mm, "mm");
    el.rate.textContent = formatPercent(prediction.success_rate);
    const passed = prediction.success_rate >= THRESHOLD;
    el.verdict.textContent = passed ? "pass" : "below threshold";
    el.verdict.className = passed ? "pass" : "fail";
  } catch (err) {
    if (err instanceof ServiceUnreachableError) setOffline(true);
    else if (err instanceof ApiError) showBanner("error", err.message);
    else throw err;
  }
}

async function reanalyze(): Promise<void> {
  const doc = store.current.document;
  if (doc === null) return;
  try {
    lastAnalysis = await api.analyze(doc, store.current.deviceId, THRESHOLD);
    setOffline(false);
  } catch (err) {
    if (err instanceof ServiceUnreachableError) setOffline(true);
    else if (err instanceof ApiError) showBanner("error", err.message);
    else throw err;
  }
  renderCanvas();
}

// ------------------------------------------------------------------ events

async function loadDevices(): Promise<void> {
  devices = await api.devices();
  el.deviceSelect.replaceChildren(
    ...devices.map((device) => {
      const option = document.createElement("option");
      option.value = device.id;
      option.textContent = device.display_name;
      return option;
    }),
  );
  el.deviceSelect.value = store.current.deviceId;
}

el.filePicker.addEventListener("change", async () => {
  const file = el.filePicker.files?.[0];
  if (file === undefined) return;
  let doc: LayoutDocument;
  try {
    doc = JSON.parse(await file.text()) as LayoutDocument;
    // Round-trip through the service's validator; a schema violation leaves
    // the current canvas untouched.
    await api.analyze(doc, doc.default_device ?? store.current.deviceId, THRESHOLD);
  } catch (err) {
    if (err instanceof ApiError) showBanner("error", `invalid layout: ${err.message}`);
    else if (err instanceof ServiceUnreachableError) setOffline(true);
    else showBanner("error", `invalid layout: ${String(err)}`);
    return;
  }
  clearBanner();
  if (doc.default_device !== undefined && devices.some((d) => d.id === doc.default_device)) {
    store.setDevice(doc.default_device);
    el.deviceSelect.value = doc.default_device;
  }
  store.loadDocument(doc);
  await reanalyze();
});

el.deviceSelect.addEventListener("change", async () => {
  store.setDevice(el.deviceSelect.value);
  await reanalyze();
  await updatePanel();
});

el.screen.addEventListener("click", (event) => {
  const doc = store.current.document;
  if (doc === null) return;
  const device = currentDevice();
  const viewport = el.canvas.getBoundingClientRect();
  const t = fitDevice(device, viewport.width, viewport.height);
  const rect = el.screen.getBoundingClientRect();
  const x = (event.clientX - rect.left) / t.scale;
  const y = (event.clientY - rect.top) / t.scale;
  const hit = hitTest(doc, x, y);
  if (hit !== null) {
    store.selectNode(hit.id);
    syncSlidersToSelection();
    renderCanvas();
    void updatePanel();
  }
});

function syncSlidersToSelection(): void {
  const effective = store.effectiveSelection();
  if (effective === null) return;
  el.widthSlider.value = String(Math.round(effective.widthPx));
  el.heightSlider.value = String(Math.round(effective.heightPx));
  el.whatifLabel.textContent = `${el.widthSlider.value} x ${el.heightSlider.value} px`;
}

const debouncedWhatIfFetch = debounce(() => void updatePanel(), WHATIF_DEBOUNCE_MS);

function onSliderInput(): void {
  if (store.current.selectedNodeId === null) return;
  store.setWhatIf({
    width_px: Number(el.widthSlider.value),
    height_px: Number(el.heightSlider.value),
  });
  el.whatifLabel.textContent = `${el.widthSlider.value} x ${el.heightSlider.value} px`;
  renderCanvas();
  debouncedWhatIfFetch();
}

el.widthSlider.addEventListener("input", onSliderInput);
el.heightSlider.addEventListener("input", onSliderInput);

el.resetButton.addEventListener("click", () => {
  store.resetWhatIf();
  syncSlidersToSelection();
  renderCanvas();
  void updatePanel();
});

el.sizeForButton.addEventListener("click", async () => {
  if (store.current.selectedNodeId === null) return;
  const target = Number(el.targetRate.value);
  el.sizeForMessage.textContent = "…";
  const result = await sizeForRate(
    async (sideMm) => (await api.predictMm(sideMm, sideMm)).success_rate,
    target,
  );
  if (result.kind === "unattainable") {
    el.sizeForMessage.textContent = `unattainable: ceiling is ${formatPercentPrecise(result.ceiling)}`;
    return;
  }
  el.sizeForMessage.textContent = "";
  const device = currentDevice();
  const sidePx = Math.ceil(mmToPx(result.sideMm, device));
  el.widthSlider.value = String(sidePx);
  el.heightSlider.value = String(sidePx);
  onSliderInput();
});

window.addEventListener("resize", renderCanvas);

async function start(): Promise<void> {
  try {
    await api.health();
    await loadDevices();
    setOffline(false);
  } catch {
    setOffline(true);
  }
  store.subscribe(() => undefined);
  renderCanvas();
}

void start();
