// Entry point: binds the controller to the static page regions.

import type { Ad } from "./api-types.js";
import { ApiClient } from "./api.js";
import { ReviewController } from "./controller.js";
import { renderBanner, renderCampaignList, renderExportPanel, renderTokenForm, renderVariantCards } from "./render.js";
import type { AppState } from "./state.js";
import { variantCards } from "./state.js";

function region(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing page region #${id}`);
  return node;
}

export function boot(base = ""): ReviewController {
  const api = new ApiClient(base);
  const controller = new ReviewController(api, render);

  function render(state: AppState): void {
    renderBanner(region("banner"), state.banner, () => void controller.refreshCampaigns());
    renderCampaignList(
      region("campaigns"),
      state.campaigns,
      state.activeCampaignId,
      (id) => controller.selectCampaign(id),
    );
    const cards = state.activeItem ? variantCards(state.activeItem.variant_set) : [];
    renderVariantCards(region("variants"), cards, state.selectedVariant, (name) =>
      controller.selectVariant(name),
    );
    const variantText =
      state.selectedVariant && state.activeItem
        ? state.activeItem.variant_set.variants[state.selectedVariant]?.text ?? null
        : null;
    renderTokenForm(region("tokens"), state.fields, variantText, (label, value) =>
      controller.setFill(label, value),
    );
    renderExportPanel(
      region("export"),
      state,
      () => void controller.finalize(),
      () => void controller.exportItem(),
    );
  }

  const campaignForm = region("campaign-form") as HTMLFormElement;
  campaignForm.onsubmit = (event) => {
    event.preventDefault();
    const input = region("campaign-name") as HTMLInputElement;
    if (input.value.trim()) {
      void controller.createCampaign(input.value.trim());
      input.value = "";
    }
  };

  const submitForm = region("submit-form") as HTMLFormElement;
  submitForm.onsubmit = (event) => {
    event.preventDefault();
    const kind = (region("submit-kind") as HTMLSelectElement).value;
    const domain = (region("submit-domain") as HTMLSelectElement).value as "MS" | "PH";
    const value = (region("submit-value") as HTMLTextAreaElement).value.trim();
    if (!value) return;
    if (kind === "url") {
      void controller.submitPage({ url: value, domain });
    } else if (kind === "html") {
      void controller.submitPage({ html: value, domain });
    } else {
      try {
        void controller.submitAd(JSON.parse(value) as Ad);
      } catch {
        renderBanner(region("banner"), "Ad JSON did not parse.", () => {});
      }
    }
  };

  void controller.refreshCampaigns();
  return controller;
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  boot();
}
