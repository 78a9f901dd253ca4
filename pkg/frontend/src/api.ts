// Thin typed client over the /v1 JSON API. Every method maps 1:1 onto a
// service endpoint; no ad text is modified on this side.

import type {
  Ad,
  AnalyzeResponse,
  ApiError,
  Campaign,
  CampaignItem,
  ExportResponse,
} from "./api-types.js";

export class ApiRequestError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

export class ApiOfflineError extends Error {
  constructor(public readonly reason: unknown) {
    super("server unreachable");
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private base: string = "",
    private fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchImpl(this.base + path, {
        method,
        headers: body === undefined ? undefined : { "content-type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (err) {
      throw new ApiOfflineError(err);
    }
    if (!response.ok) {
      let payload: ApiError = { code: `http_${response.status}`, message: response.statusText };
      try {
        payload = (await response.json()) as ApiError;
      } catch {
        // non-JSON error body: keep the fallback
      }
      throw new ApiRequestError(response.status, payload.code, payload.message);
    }
    if (response.status === 204) {
      return undefined as T;
    }
    return (await response.json()) as T;
  }

  health(): Promise<{ status: string }> {
    return this.request("GET", "/v1/health");
  }

  listCampaigns(): Promise<Campaign[]> {
    return this.request("GET", "/v1/campaigns");
  }

  createCampaign(name: string): Promise<Campaign> {
    return this.request("POST", "/v1/campaigns", { name });
  }

  deleteCampaign(id: string): Promise<void> {
    return this.request("DELETE", `/v1/campaigns/${id}`);
  }

  listItems(campaignId: string): Promise<CampaignItem[]> {
    return this.request("GET", `/v1/campaigns/${campaignId}/items`);
  }

  submitAd(campaignId: string, ad: Ad, html?: string): Promise<CampaignItem> {
    const body: Record<string, unknown> = { ad };
    if (html !== undefined) body.html = html;
    return this.request("POST", `/v1/campaigns/${campaignId}/items`, body);
  }

  submitPage(
    campaignId: string,
    page: { url?: string; html?: string; domain: "MS" | "PH"; query?: string },
  ): Promise<CampaignItem> {
    return this.request("POST", `/v1/campaigns/${campaignId}/items`, page);
  }

  finalize(
    itemId: string,
    variant: string,
    fills: Record<string, string>,
  ): Promise<CampaignItem> {
    return this.request("POST", `/v1/items/${itemId}/finalize`, { variant, fills });
  }

  exportItem(itemId: string): Promise<ExportResponse> {
    return this.request("GET", `/v1/items/${itemId}/export`);
  }

  analyze(text: string): Promise<AnalyzeResponse> {
    return this.request("POST", "/v1/analyze", { text });
  }
}
