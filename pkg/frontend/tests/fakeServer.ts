// In-memory stand-in for the /v1 service, faithful to the wire contract:
// four ranked variants per submitted item, placeholder realization with
// defaults at finalize time, the draft->reviewed->exported status machine,
// and 30/90-char field packing on export.

import type { CampaignItem, Variant, VariantSet } from "../src/api-types.js";

const SERVER_DEFAULTS: Record<string, string> = {
  CARDINAL: "10",
  DATE: "24/7",
  ORG: "our site",
  "CONDITION/TREATMENT": "your condition",
};

function variant(
  name: string,
  text: string,
  rank: number,
  probability: number,
  ctaVerbs: string[],
): Variant {
  return {
    name,
    text,
    substitutions: [],
    realized: text,
    features: {
      fk_ease: 90,
      fk_grade: 2,
      difficult_words: 0,
      consensus_grade: 3,
      sentiment: 0.4,
      lexical_diversity: 0.9,
      punct_count: 2,
      noun_phrase_count: 2,
      adjective_count: 1,
    },
    probability,
    rank,
    annotations: { cta_verbs: ctaVerbs, effects: ["luxury_seeking"], arousal: 1.1, valence: 0.8 },
  };
}

export function fourVariantSet(translatedText?: string): VariantSet {
  return {
    ad_id: "ad-1",
    query: "cough remedy",
    domain: "MS",
    variants: {
      human: variant("human", "Best Remedy For Cough - Updated 24/7.", 4, 0.05, []),
      generated: variant("generated", "cough fact and advice here.", 3, 0.4, []),
      translated: variant(
        "translated",
        translatedText ?? "discover <CARDINAL> cough fact - browse now!",
        1,
        0.95,
        ["discover", "browse"],
      ),
      generated_translated: variant(
        "generated_translated",
        "check top cough remedy today!",
        1,
        0.9,
        ["check"],
      ),
    },
  };
}

function packWords(words: string[], fieldCount: number, maxChars: number): [string[], string[]] {
  const fields: string[] = [];
  let i = 0;
  while (i < words.length && fields.length < fieldCount) {
    let current = "";
    while (i < words.length) {
      const candidate = current ? `${current} ${words[i]}` : words[i];
      if (candidate.length > maxChars) break;
      current = candidate;
      i += 1;
    }
    fields.push(current);
    if (!current) break;
  }
  return [fields, words.slice(i)];
}

export interface FakeServer {
  fetch: (url: string, init?: RequestInit) => Promise<Response>;
  requests: string[];
  offline: boolean;
}

export function makeFakeServer(): FakeServer {
  const campaigns = new Map<string, { id: string; name: string; items: string[] }>();
  const items = new Map<string, CampaignItem>();
  let nextId = 0;
  const server: FakeServer = { requests: [], offline: false, fetch: async () => new Response() };

  function json(status: number, body: unknown): Response {
    return new Response(JSON.stringify(body), {
      status,
      headers: { "content-type": "application/json" },
    });
  }

  function error(status: number, code: string, message: string): Response {
    return json(status, { code, message });
  }

  server.fetch = async (url: string, init?: RequestInit): Promise<Response> => {
    if (server.offline) throw new TypeError("fetch failed: connection refused");
    const method = init?.method ?? "GET";
    const body = init?.body ? JSON.parse(String(init.body)) : {};
    server.requests.push(`${method} ${url}`);

    if (method === "GET" && url === "/v1/campaigns") {
      return json(200, [...campaigns.values()].map((c) => ({ ...c, created_at: "t", items: [] })));
    }
    if (method === "POST" && url === "/v1/campaigns") {
      if (!body.name?.trim()) return error(400, "ConfigError", "campaign needs a name");
      const id = `c${nextId++}`;
      campaigns.set(id, { id, name: body.name, items: [] });
      return json(201, { id, name: body.name, created_at: "t", items: [] });
    }
    const itemsMatch = url.match(/^\/v1\/campaigns\/([^/]+)\/items$/);
    if (method === "POST" && itemsMatch) {
      const campaign = campaigns.get(itemsMatch[1]);
      if (!campaign) return error(404, "NotFound", "campaign not found");
      const id = `i${nextId++}`;
      const translatedText =
        body.ad?.id === "ad-mystery" ? "discover <MYSTERY> fact now!" : undefined;
      const item: CampaignItem = {
        id,
        campaign_id: campaign.id,
        source: body.ad ? { kind: "ad" } : { kind: "page" },
        variant_set: fourVariantSet(translatedText),
        status: "draft",
        fills: {},
        variant: null,
        finalized_text: null,
        formatted: null,
      };
      items.set(id, item);
      campaign.items.push(id);
      return json(201, item);
    }
    const finalizeMatch = url.match(/^\/v1\/items\/([^/]+)\/finalize$/);
    if (method === "POST" && finalizeMatch) {
      const item = items.get(finalizeMatch[1]);
      if (!item) return error(404, "NotFound", "item not found");
      if (item.status === "exported") return error(409, "InvalidTransition", "already exported");
      const chosen = item.variant_set.variants[body.variant];
      if (!chosen) return error(404, "NotFound", "no such variant");
      const fills: Record<string, string> = { ...SERVER_DEFAULTS, ...(body.fills ?? {}) };
      let unfilled: string | null = null;
      const realized = chosen.text.replace(/<([A-Z][A-Z/_]*)>/g, (whole, label: string) => {
        if (fills[label] === undefined) {
          unfilled = label;
          return whole;
        }
        return fills[label];
      });
      if (unfilled) return error(422, "UnfilledPlaceholder", `no fill for <${unfilled}>`);
      const capitalized = realized.charAt(0).toUpperCase() + realized.slice(1);
      const boundary = capitalized.search(/[.!?](\s|$)/);
      const first = boundary >= 0 ? capitalized.slice(0, boundary + 1) : capitalized;
      const rest = boundary >= 0 ? capitalized.slice(boundary + 1).trim() : "";
      const [title, leftover] = packWords(first.split(/\s+/).filter(Boolean), 3, 30);
      const [description] = packWords(
        [...leftover, ...rest.split(/\s+/).filter(Boolean)],
        2,
        90,
      );
      item.status = "reviewed";
      item.variant = body.variant;
      item.fills = body.fills ?? {};
      item.finalized_text = capitalized;
      item.formatted = { title, description, warnings: [] };
      return json(200, item);
    }
    const exportMatch = url.match(/^\/v1\/items\/([^/]+)\/export$/);
    if (method === "GET" && exportMatch) {
      const item = items.get(exportMatch[1]);
      if (!item) return error(404, "NotFound", "item not found");
      if (item.status === "draft") return error(409, "InvalidTransition", "finalize first");
      item.status = "exported";
      return json(200, {
        id: item.id,
        campaign_id: item.campaign_id,
        variant: item.variant,
        finalized_text: item.finalized_text,
        title: item.formatted?.title ?? [],
        description: item.formatted?.description ?? [],
        warnings: item.formatted?.warnings ?? [],
      });
    }
    return error(404, "NotFound", `no route ${method} ${url}`);
  };

  return server;
}
