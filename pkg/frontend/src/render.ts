// DOM construction for the review console. All content shown here comes
// straight from server payloads via the state module.

import type { AppState, TokenField, VariantCard } from "./state.js";
import { fillsComplete, previewText } from "./state.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function badge(text: string, kind: string): HTMLElement {
  return el("span", `badge badge-${kind}`, text);
}

export function renderBanner(container: HTMLElement, message: string | null, onRetry: () => void): void {
  container.innerHTML = "";
  if (!message) return;
  const bar = el("div", "banner");
  bar.appendChild(el("span", "banner-text", message));
  const retry = el("button", "banner-retry", "Retry");
  retry.onclick = onRetry;
  bar.appendChild(retry);
  container.appendChild(bar);
}

export function renderCampaignList(
  container: HTMLElement,
  campaigns: { id: string; name: string }[],
  activeId: string | null,
  onSelect: (id: string) => void,
): void {
  container.innerHTML = "";
  const list = el("ul", "campaign-list");
  for (const campaign of campaigns) {
    const item = el("li", campaign.id === activeId ? "campaign active" : "campaign");
    const button = el("button", "campaign-name", campaign.name);
    button.onclick = () => onSelect(campaign.id);
    item.appendChild(button);
    list.appendChild(item);
  }
  container.appendChild(list);
}

export function renderVariantCards(
  container: HTMLElement,
  cards: VariantCard[],
  selected: string | null,
  onSelect: (name: string) => void,
): void {
  container.innerHTML = "";
  for (const card of cards) {
    const div = el("div", card.name === selected ? "variant-card selected" : "variant-card");
    div.dataset.variant = card.name;

    const head = el("div", "variant-head");
    head.appendChild(el("h3", "variant-label", card.label));
    if (card.rank !== null) {
      head.appendChild(badge(`rank ${card.rank}`, "rank"));
    }
    if (card.probability !== null) {
      head.appendChild(badge(`p=${card.probability.toFixed(2)}`, "prob"));
    }
    div.appendChild(head);

    div.appendChild(el("p", "variant-text", card.text));

    const badges = el("div", "variant-badges");
    badges.appendChild(badge(`CTA: ${card.ctaVerbs.length ? card.ctaVerbs.join(", ") : "none"}`, "cta"));
    for (const effect of card.effects) {
      badges.appendChild(badge(effect.replace("_", " "), "effect"));
    }
    if (card.arousal !== null) {
      badges.appendChild(badge(`arousal ${card.arousal.toFixed(2)}`, "affect"));
    }
    if (card.valence !== null) {
      badges.appendChild(badge(`valence ${card.valence.toFixed(2)}`, "affect"));
    }
    div.appendChild(badges);

    const pick = el("button", "variant-pick", "Review this variant");
    pick.onclick = () => onSelect(card.name);
    div.appendChild(pick);
    container.appendChild(div);
  }
}

export function renderTokenForm(
  container: HTMLElement,
  fields: TokenField[],
  variantText: string | null,
  onChange: (label: string, value: string) => void,
): void {
  container.innerHTML = "";
  if (variantText === null) return;
  const form = el("div", "token-form");
  if (fields.length === 0) {
    form.appendChild(el("p", "token-none", "No placeholder tokens to fill."));
  }
  for (const field of fields) {
    const row = el("label", "token-row");
    row.appendChild(el("span", "token-label", `<${field.label}>`));
    const input = el("input", "token-input");
    input.value = field.value;
    input.placeholder = field.hasDefault ? "" : "required";
    input.dataset.label = field.label;
    input.oninput = () => onChange(field.label, input.value);
    row.appendChild(input);
    form.appendChild(row);
  }
  form.appendChild(el("p", "token-preview", previewText(variantText, fields)));
  container.appendChild(form);
}

export function renderExportPanel(
  container: HTMLElement,
  state: AppState,
  onFinalize: () => void,
  onExport: () => void,
): void {
  container.innerHTML = "";
  const panel = el("div", "export-panel");
  const status = state.activeItem?.status ?? "draft";
  panel.appendChild(el("p", "item-status", `status: ${status}`));

  const finalize = el("button", "finalize-button", "Finalize");
  finalize.disabled =
    state.busy || !state.activeItem || status === "exported" || !fillsComplete(state.fields);
  finalize.onclick = onFinalize;
  panel.appendChild(finalize);

  const exportButton = el("button", "export-button", "Export");
  exportButton.disabled =
    state.busy || !state.activeItem || status === "draft" || !fillsComplete(state.fields);
  exportButton.onclick = onExport;
  panel.appendChild(exportButton);

  if (state.activeItem?.finalized_text) {
    panel.appendChild(el("p", "finalized-text", state.activeItem.finalized_text));
  }
  if (state.exported) {
    const pre = el("pre", "export-json");
    pre.textContent = JSON.stringify(state.exported, null, 2);
    panel.appendChild(pre);
  }
  container.appendChild(panel);
}
