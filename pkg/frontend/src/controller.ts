// Orchestrates the review flow. Every transition round-trips through the
// service; finalize and export update state only from the server's
// response (no optimistic UI).

import type { Ad, CampaignItem } from "./api-types.js";
import { ApiClient, ApiOfflineError, ApiRequestError } from "./api.js";
import type { AppState } from "./state.js";
import {
  fillsPayload,
  initialState,
  withFieldValue,
  withItem,
  withVariantSelection,
} from "./state.js";

export class ReviewController {
  state: AppState = initialState();

  constructor(
    private api: ApiClient,
    private onChange: (state: AppState) => void = () => {},
  ) {}

  private publish(): void {
    this.onChange(this.state);
  }

  private fail(err: unknown): void {
    if (err instanceof ApiOfflineError) {
      this.state = { ...this.state, busy: false, banner: "Server unreachable. Nothing was changed." };
    } else if (err instanceof ApiRequestError) {
      this.state = { ...this.state, busy: false, banner: `${err.code}: ${err.message}` };
    } else {
      this.state = { ...this.state, busy: false, banner: String(err) };
    }
    this.publish();
  }

  async refreshCampaigns(): Promise<void> {
    try {
      const campaigns = await this.api.listCampaigns();
      this.state = {
        ...this.state,
        campaigns: campaigns.map((c) => ({ id: c.id, name: c.name })),
        banner: null,
      };
      this.publish();
    } catch (err) {
      this.fail(err);
    }
  }

  async createCampaign(name: string): Promise<string | null> {
    try {
      const campaign = await this.api.createCampaign(name);
      this.state = {
        ...this.state,
        campaigns: [...this.state.campaigns, { id: campaign.id, name: campaign.name }],
        activeCampaignId: campaign.id,
        banner: null,
      };
      this.publish();
      return campaign.id;
    } catch (err) {
      this.fail(err);
      return null;
    }
  }

  selectCampaign(id: string): void {
    this.state = { ...this.state, activeCampaignId: id, activeItem: null, exported: null };
    this.publish();
  }

  async submitAd(ad: Ad, html?: string): Promise<CampaignItem | null> {
    const campaignId = this.state.activeCampaignId;
    if (!campaignId) return null;
    this.state = { ...this.state, busy: true };
    this.publish();
    try {
      const item = await this.api.submitAd(campaignId, ad, html);
      this.state = { ...withItem(this.state, item), busy: false };
      this.publish();
      return item;
    } catch (err) {
      this.fail(err);
      return null;
    }
  }

  async submitPage(page: { url?: string; html?: string; domain: "MS" | "PH" }): Promise<CampaignItem | null> {
    const campaignId = this.state.activeCampaignId;
    if (!campaignId) return null;
    this.state = { ...this.state, busy: true };
    this.publish();
    try {
      const item = await this.api.submitPage(campaignId, page);
      this.state = { ...withItem(this.state, item), busy: false };
      this.publish();
      return item;
    } catch (err) {
      this.fail(err);
      return null;
    }
  }

  selectVariant(name: string): void {
    this.state = withVariantSelection(this.state, name);
    this.publish();
  }

  setFill(label: string, value: string): void {
    this.state = withFieldValue(this.state, label, value);
    this.publish();
  }

  async finalize(): Promise<CampaignItem | null> {
    const item = this.state.activeItem;
    const variant = this.state.selectedVariant;
    if (!item || !variant) return null;
    this.state = { ...this.state, busy: true };
    this.publish();
    try {
      const updated = await this.api.finalize(item.id, variant, fillsPayload(this.state.fields));
      // keep the user's form values; everything else mirrors the response
      const fields = this.state.fields;
      this.state = { ...withItem(this.state, updated), fields, busy: false };
      this.publish();
      return updated;
    } catch (err) {
      this.fail(err);
      return null;
    }
  }

  async exportItem(): Promise<Record<string, unknown> | null> {
    const item = this.state.activeItem;
    if (!item) return null;
    this.state = { ...this.state, busy: true };
    this.publish();
    try {
      const exported = (await this.api.exportItem(item.id)) as unknown as Record<string, unknown>;
      this.state = {
        ...this.state,
        busy: false,
        banner: null,
        exported,
        activeItem: { ...item, status: "exported" },
      };
      this.publish();
      return exported;
    } catch (err) {
      this.fail(err);
      return null;
    }
  }
}
