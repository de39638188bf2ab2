// Canvas state machine. Keeps the inspector's invariants in one place:
//  - a selected node id always refers to a node of the loaded document;
//  - a what-if override never survives a selection change (including
//    re-selecting a different node or loading another document).

import type { LayoutDocument, LayoutNode } from "./types.js";

export interface WhatIfSize {
  width_px: number;
  height_px: number;
}

export interface CanvasState {
  document: LayoutDocument | null;
  selectedNodeId: string | null;
  deviceId: string;
  whatIfSize: WhatIfSize | null;
}

export function walkNodes(root: LayoutNode): LayoutNode[] {
  const out: LayoutNode[] = [];
  const visit = (node: LayoutNode): void => {
    out.push(node);
    for (const child of node.children ?? []) visit(child);
  };
  visit(root);
  return out;
}

export function findNode(doc: LayoutDocument, id: string): LayoutNode | undefined {
  return walkNodes(doc.root).find((node) => node.id === id);
}

type Listener = (state: CanvasState) => void;

export class CanvasStore {
  private state: CanvasState;
  private listeners: Listener[] = [];

  constructor(deviceId: string) {
    this.state = {
      document: null,
      selectedNodeId: null,
      deviceId,
      whatIfSize: null,
    };
  }

  get current(): CanvasState {
    return this.state;
  }

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  private commit(next: CanvasState): void {
    this.state = next;
    for (const listener of this.listeners) listener(next);
  }

  loadDocument(doc: LayoutDocument): void {
    // A fresh document invalidates the selection and any override.
    this.commit({
      ...this.state,
      document: doc,
      selectedNodeId: null,
      whatIfSize: null,
    });
  }

  selectNode(id: string | null): void {
    if (id !== null) {
      const doc = this.state.document;
      if (doc === null || findNode(doc, id) === undefined) {
        throw new Error(`cannot select unknown node ${id}`);
      }
    }
    if (id === this.state.selectedNodeId) return;
    this.commit({ ...this.state, selectedNodeId: id, whatIfSize: null });
  }

  setDevice(deviceId: string): void {
    // Selection survives a device switch; the panel refetches with the new
    // conversion. The override is in px, still meaningful, so it stays too.
    this.commit({ ...this.state, deviceId });
  }

  setWhatIf(size: WhatIfSize | null): void {
    if (size !== null && this.state.selectedNodeId === null) {
      throw new Error("what-if resize requires a selected node");
    }
    this.commit({ ...this.state, whatIfSize: size });
  }

  resetWhatIf(): void {
    this.commit({ ...this.state, whatIfSize: null });
  }

  /** The node the detail panel describes, with any what-if override applied. */
  effectiveSelection(): { node: LayoutNode; widthPx: number; heightPx: number } | null {
    const { document, selectedNodeId, whatIfSize } = this.state;
    if (document === null || selectedNodeId === null) return null;
    const node = findNode(document, selectedNodeId);
    if (node === undefined) return null;
    return {
      node,
      widthPx: whatIfSize?.width_px ?? node.frame.width,
      heightPx: whatIfSize?.height_px ?? node.frame.height,
    };
  }
}

/** Invariant check used by the property tests and debug builds. */
export function stateInvariantsHold(state: CanvasState): boolean {
  if (state.selectedNodeId !== null) {
    if (state.document === null) return false;
    if (findNode(state.document, state.selectedNodeId) === undefined) return false;
  }
  if (state.whatIfSize !== null && state.selectedNodeId === null) return false;
  return true;
}
