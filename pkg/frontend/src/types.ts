// Wire types for the tappy /v1 endpoints and the layout file schema.

export interface DeviceProfile {
  id: string;
  display_name: string;
  ppi: number;
  scale_factor: number;
  logical_width: number;
  logical_height: number;
}

export interface Frame {
  x: number;
  y: number;
  width: number;
  height: number;
}

export interface LayoutNode {
  id: string;
  name: string;
  type: string;
  frame: Frame;
  tappable?: boolean;
  children?: LayoutNode[];
}

export interface LayoutDocument {
  name: string;
  default_device?: string;
  root: LayoutNode;
}

export interface PredictResponse {
  width_mm: number;
  height_mm: number;
  sigma_x_mm: number;
  sigma_y_mm: number;
  success_rate: number;
}

export interface ElementReport {
  node_id: string;
  node_name: string;
  width_px: number;
  height_px: number;
  width_mm: number;
  height_mm: number;
  sigma_x_mm: number;
  sigma_y_mm: number;
  success_rate: number;
  passed: boolean;
}

export interface AnalyzeResponse {
  document_name: string;
  device_id: string;
  threshold: number;
  generated_at?: string;
  worst: string | null;
  elements: ElementReport[];
}

export interface ApiErrorBody {
  error: string;
  message: string;
  detail?: string;
}
