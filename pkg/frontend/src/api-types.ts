// Generated from schema/api.schema.json by scripts/gen_api_types.py.
// Do not edit by hand; rerun the generator instead.

export interface Ad {
  id: string;
  query: string;
  domain: "MS" | "PH";
  title: string[];
  description: string[];
  impressions: number;
  clicks: number;
  url?: null | string;
}

export interface ParentScore {
  selector: string;
  points: number;
}

export interface ExtractedContent {
  title: string;
  blocks: string[];
  scores: ParentScore[];
}

export interface FeatureVector {
  fk_ease: number;
  fk_grade: number;
  difficult_words: number;
  consensus_grade: number;
  sentiment: number;
  lexical_diversity: number;
  punct_count: number;
  noun_phrase_count: number;
  adjective_count: number;
}

export type Substitution = [string, string];

export interface Annotations {
  cta_verbs: string[];
  effects: string[];
  arousal?: number;
  valence?: number;
}

export interface Variant {
  name: string;
  text: string;
  substitutions: Substitution[];
  realized: string;
  features: FeatureVector;
  probability?: null | number;
  rank?: null | number;
  annotations: Annotations;
}

export interface VariantSet {
  ad_id: string;
  query: string;
  domain: string;
  variants: Record<string, Variant>;
}

export interface TranslateResponse {
  text: string;
  substitutions: Substitution[];
}

export interface AnalyzeResponse {
  features: FeatureVector;
  cta_verbs: string[];
  effects: string[];
  arousal?: number;
  valence?: number;
}

export interface FormattedAd {
  title: string[];
  description: string[];
  warnings: string[];
}

export interface CampaignItem {
  id: string;
  campaign_id: string;
  source: Record<string, unknown>;
  variant_set: VariantSet;
  status: "draft" | "reviewed" | "exported";
  fills: Record<string, string>;
  variant?: null | string;
  finalized_text?: null | string;
  formatted?: FormattedAd | null;
}

export interface Campaign {
  id: string;
  name: string;
  created_at: string;
  items: CampaignItem[];
}

export interface ExportResponse {
  id: string;
  campaign_id: string;
  variant?: null | string;
  finalized_text?: null | string;
  title: string[];
  description: string[];
  warnings: string[];
}

export interface ApiError {
  code: string;
  message: string;
}
