// Shared shapes mirroring the service's JSON contracts.

export type Modality = "audio" | "video" | "text" | "feature";

export const MODALITY_ORDER: Record<Modality, number> = {
  audio: 0,
  video: 1,
  text: 2,
  feature: 3,
};

// Kind names per modality, mirroring the engine registry (names only; the
// UI never implements noise semantics of its own).
export const KINDS: Record<Modality, string[]> = {
  audio: [
    "insulate", "mute", "reverb_hall", "reverb_room",
    "color_white", "color_pink", "color_brown", "color_blue", "color_violet", "color_velvet",
    "bg_mix", "sudden",
  ],
  video: [
    "occlude", "blank", "gblur", "avg_blur", "add_gauss", "impulse",
    "contrast", "brightness", "saturation", "gamma", "invert", "channel_swap",
  ],
  text: ["erase", "replace", "asr_variant"],
  feature: ["random_drop", "structural_drop"],
};

export interface NoiseItem {
  modality: Modality;
  kind: string;
  start_s: number;
  end_s: number;
  intensity: number;
  params?: Record<string, unknown> | null;
}

export interface NoiseSpec {
  seed: number;
  clip_duration_s?: number | null;
  items: NoiseItem[];
}

export interface MediaMeta {
  duration_s: number;
  fps: number | null;
  width: number | null;
  height: number | null;
  sample_rate: number | null;
  channels: number | null;
  container: string;
  has_video: boolean;
  has_audio: boolean;
}

export interface Word {
  token: string;
  start_s?: number;
  end_s?: number;
}

export interface Transcript {
  language: string;
  words: Word[];
}

export interface Session {
  id: string;
  meta: MediaMeta;
  transcript: Transcript;
  spec: NoiseSpec | null;
  status: string;
  generation: number;
  noisy: string | null;
  error: string | null;
}

export interface AudioSeries {
  window_s: number;
  times: number[];
  rms: number[];
  centroid: number[];
}

export interface VideoSeries {
  times: number[];
  luma: number[];
  edge: number[];
}

export interface SideFeatures {
  duration_s: number;
  audio: AudioSeries | null;
  video: VideoSeries | null;
  text: string[];
}

export interface ComparisonPayload {
  generation: number;
  predictor: string | null;
  denoiser: string | null;
  original: SideFeatures;
  noisy: SideFeatures;
  predictions: { original: number; noisy: number } | null;
}

export interface StatusResponse {
  status: string;
  generation: number;
  error: string | null;
}
