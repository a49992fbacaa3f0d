// Shared shapes mirroring the service's JSON contracts.
export const MODALITY_ORDER = {
    audio: 0,
    video: 1,
    text: 2,
    feature: 3,
};
// Kind names per modality, mirroring the engine registry (names only; the
// UI never implements noise semantics of its own).
export const KINDS = {
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
