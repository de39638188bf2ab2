// Canvas geometry: fit the device's logical-resolution frame into the
// viewport and decide which nodes are click targets.

import type { DeviceProfile, Frame, LayoutDocument, LayoutNode } from "./types.js";
import { walkNodes } from "./state.js";

export interface ViewTransform {
  scale: number;
  offsetX: number;
  offsetY: number;
}

/** Uniform scale that fits a device screen into viewport pixels, centred. */
export function fitDevice(
  device: Pick<DeviceProfile, "logical_width" | "logical_height">,
  viewportWidth: number,
  viewportHeight: number,
  margin = 16,
): ViewTransform {
  const availW = Math.max(1, viewportWidth - 2 * margin);
  const availH = Math.max(1, viewportHeight - 2 * margin);
  const scale = Math.min(availW / device.logical_width, availH / device.logical_height);
  return {
    scale,
    offsetX: (viewportWidth - device.logical_width * scale) / 2,
    offsetY: (viewportHeight - device.logical_height * scale) / 2,
  };
}

export function toView(frame: Frame, t: ViewTransform): Frame {
  return {
    x: t.offsetX + frame.x * t.scale,
    y: t.offsetY + frame.y * t.scale,
    width: frame.width * t.scale,
    height: frame.height * t.scale,
  };
}

function isLeaf(node: LayoutNode): boolean {
  return (node.children ?? []).length === 0;
}

/**
 * Nodes the inspector lets you click, mirroring the analyzer's default
 * selection rule: leaves with positive area, plus anything explicitly
 * flagged tappable (which also wins over the other rules when false).
 */
export function selectableNodes(doc: LayoutDocument): LayoutNode[] {
  return walkNodes(doc.root).filter((node) => {
    if (node.tappable === false) return false;
    if (node.tappable === true) return true;
    return isLeaf(node) && node.frame.width > 0 && node.frame.height > 0;
  });
}

/** Topmost selectable node under a point, in logical px coordinates. */
export function hitTest(doc: LayoutDocument, x: number, y: number): LayoutNode | null {
  const candidates = selectableNodes(doc).filter((node) => {
    const f = node.frame;
    return x >= f.x && x <= f.x + f.width && y >= f.y && y <= f.y + f.height;
  });
  return candidates.length > 0 ? candidates[candidates.length - 1]! : null;
}

/** True when any part of the document sticks out of the device screen. */
export function overflowsDevice(
  doc: LayoutDocument,
  device: Pick<DeviceProfile, "logical_width" | "logical_height">,
): boolean {
  return walkNodes(doc.root).some(
    (node) =>
      node.frame.x < 0 ||
      node.frame.y < 0 ||
      node.frame.x + node.frame.width > device.logical_width ||
      node.frame.y + node.frame.height > device.logical_height,
  );
}
