// Pure view-model logic: placeholder forms, the export gating rule, and
// card descriptors derived from the latest server response.

import type { CampaignItem, Variant, VariantSet } from "./api-types.js";

export const VARIANT_ORDER = ["human", "generated", "translated", "generated_translated"];

export const VARIANT_LABELS: Record<string, string> = {
  human: "Human-authored",
  generated: "Generator",
  translated: "Translator",
  generated_translated: "Generator + Translator",
};

// Mirrors the server's realize defaults for pre-filling token inputs.
export const TOKEN_DEFAULTS: Record<string, string> = {
  CARDINAL: "10",
  DATE: "24/7",
  MONEY: "$5",
  PERSON: "our experts",
  GPE: "the US",
  ORG: "our site",
  "CONDITION/TREATMENT": "your condition",
};

const PLACEHOLDER_RE = /<([A-Z][A-Z/_]*)>/g;

export function placeholderLabels(text: string): string[] {
  const seen = new Set<string>();
  const labels: string[] = [];
  for (const match of text.matchAll(PLACEHOLDER_RE)) {
    if (!seen.has(match[1])) {
      seen.add(match[1]);
      labels.push(match[1]);
    }
  }
  return labels;
}

export interface TokenField {
  label: string;
  value: string;
  hasDefault: boolean;
}

export function tokenFields(
  variantText: string,
  defaults: Record<string, string> = TOKEN_DEFAULTS,
): TokenField[] {
  return placeholderLabels(variantText).map((label) => ({
    label,
    value: defaults[label] ?? "",
    hasDefault: label in defaults,
  }));
}

// Export stays disabled while any placeholder input is empty and has no
// default to fall back on.
export function fillsComplete(fields: TokenField[]): boolean {
  return fields.every((f) => f.value.trim() !== "" || f.hasDefault);
}

export function previewText(
  variantText: string,
  fields: TokenField[],
  defaults: Record<string, string> = TOKEN_DEFAULTS,
): string {
  const values = new Map(fields.map((f) => [f.label, f.value.trim()]));
  return variantText.replace(PLACEHOLDER_RE, (whole, label: string) => {
    const filled = values.get(label);
    if (filled) return filled;
    return defaults[label] ?? whole;
  });
}

export interface VariantCard {
  name: string;
  label: string;
  text: string;
  realized: string;
  rank: number | null;
  probability: number | null;
  ctaVerbs: string[];
  effects: string[];
  arousal: number | null;
  valence: number | null;
}

export function variantCards(variantSet: VariantSet): VariantCard[] {
  const cards: VariantCard[] = [];
  for (const name of VARIANT_ORDER) {
    const variant: Variant | undefined = variantSet.variants[name];
    if (!variant) continue;
    cards.push({
      name,
      label: VARIANT_LABELS[name] ?? name,
      text: variant.text,
      realized: variant.realized,
      rank: variant.rank ?? null,
      probability: variant.probability ?? null,
      ctaVerbs: variant.annotations.cta_verbs,
      effects: variant.annotations.effects,
      arousal: variant.annotations.arousal ?? null,
      valence: variant.annotations.valence ?? null,
    });
  }
  return cards;
}

export function bestVariantName(variantSet: VariantSet): string | null {
  const cards = variantCards(variantSet);
  if (cards.length === 0) return null;
  const ranked = cards.filter((c) => c.rank !== null);
  if (ranked.length === 0) return cards[0].name;
  return ranked.reduce((best, c) => ((c.rank as number) < (best.rank as number) ? c : best)).name;
}

export interface AppState {
  campaigns: { id: string; name: string }[];
  activeCampaignId: string | null;
  activeItem: CampaignItem | null;
  selectedVariant: string | null;
  fields: TokenField[];
  exported: Record<string, unknown> | null;
  banner: string | null;
  busy: boolean;
}

export function initialState(): AppState {
  return {
    campaigns: [],
    activeCampaignId: null,
    activeItem: null,
    selectedVariant: null,
    fields: [],
    exported: null,
    banner: null,
    busy: false,
  };
}

// Ranks and text always come from the latest server payload; selecting a
// variant rebuilds the token form from that payload alone.
export function withItem(state: AppState, item: CampaignItem): AppState {
  const variantName = item.variant ?? bestVariantName(item.variant_set);
  const variant = variantName ? item.variant_set.variants[variantName] : undefined;
  return {
    ...state,
    activeItem: item,
    selectedVariant: variantName,
    fields: variant ? tokenFields(variant.text) : [],
    exported: null,
    banner: null,
  };
}

export function withVariantSelection(state: AppState, name: string): AppState {
  const variant = state.activeItem?.variant_set.variants[name];
  if (!variant) return state;
  return { ...state, selectedVariant: name, fields: tokenFields(variant.text) };
}

export function withFieldValue(state: AppState, label: string, value: string): AppState {
  return {
    ...state,
    fields: state.fields.map((f) => (f.label === label ? { ...f, value } : f)),
  };
}

export function fillsPayload(fields: TokenField[]): Record<string, string> {
  const fills: Record<string, string> = {};
  for (const field of fields) {
    if (field.value.trim() !== "") {
      fills[field.label] = field.value.trim();
    }
  }
  return fills;
}
