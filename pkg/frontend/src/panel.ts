// Context block panel: external meta-query links, internal hits, related
// topics, and the translation-proposal form. External hrefs are copied
// byte-for-byte from the API payload; the client never re-encodes them.

import type { ApiClient, ContextBlock, Language, ProposalOut } from "./api.js";

export interface PanelCallbacks {
  onRefocus(nodeId: string): void;
}

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

export class ContextPanel {
  readonly root: HTMLElement;
  private block: ContextBlock | null = null;
  private language: Language = "en";

  constructor(
    container: HTMLElement,
    private readonly client: ApiClient,
    private readonly submitter: string = "anonymous",
  ) {
    this.root = el("aside", "context-panel");
    container.appendChild(this.root);
  }

  render(block: ContextBlock, language: Language): void {
    this.block = block;
    this.language = language;
    this.root.innerHTML = "";

    const heading = el("h2", "panel-title");
    heading.textContent = block.labels[language] ?? block.labels["en"] ?? block.node;
    this.root.appendChild(heading);
    this.root.appendChild(el("p", "panel-node-id", block.node));

    const external = el("section", "external-links");
    external.appendChild(el("h3", undefined, "Search in digital libraries"));
    if (block.metaqueries.length === 0) {
      external.appendChild(el("p", "empty-note", "No keywords in this context"));
    }
    for (const query of block.metaqueries) {
      const anchor = el("a", "provider-link", query.provider);
      // setAttribute keeps the URL byte-identical (href getters normalize).
      anchor.setAttribute("href", query.url);
      anchor.setAttribute("target", "_blank");
      anchor.setAttribute("rel", "noopener");
      external.appendChild(anchor);
    }
    this.root.appendChild(external);

    const internal = el("section", "internal-hits");
    internal.appendChild(el("h3", undefined, "Internal results"));
    if (block.internal_hits.length === 0) {
      internal.appendChild(el("p", "empty-note", "No internal results — try the external links above"));
    } else {
      const list = el("ul");
      for (const hit of block.internal_hits) {
        const item = el("li", "hit");
        const link = el("a", "article-link", hit.title);
        link.setAttribute("href", `/api/v1/articles/${hit.id}`);
        link.dataset.articleId = hit.id;
        item.appendChild(link);
        const meta = [hit.authors.join(", "), hit.context, hit.year ?? ""]
          .filter((part) => part !== "" && part !== null)
          .join(" — ");
        if (meta) item.appendChild(el("div", "hit-meta", String(meta)));
        list.appendChild(item);
      }
      internal.appendChild(list);
    }
    this.root.appendChild(internal);

    const related = el("section", "related-nodes");
    related.appendChild(el("h3", undefined, "Related topics"));
    for (const neighbor of block.related) {
      const chip = el("button", "related-chip", neighbor);
      chip.addEventListener("click", () => this.callbacks?.onRefocus(neighbor));
      related.appendChild(chip);
    }
    this.root.appendChild(related);

    this.root.appendChild(this.buildProposalForm(block.node));
  }

  private callbacks: PanelCallbacks | null = null;

  connect(callbacks: PanelCallbacks): void {
    this.callbacks = callbacks;
  }

  private buildProposalForm(nodeId: string): HTMLElement {
    const section = el("section", "proposal");
    const toggle = el("button", "proposal-toggle", "Suggest a translation");
    const form = el("form", "proposal-form");
    form.hidden = true;
    toggle.addEventListener("click", () => {
      form.hidden = !form.hidden;
    });

    const textarea = el("textarea", "proposal-text") as HTMLTextAreaElement;
    textarea.setAttribute("placeholder", "Alternative label for this topic…");
    const submit = el("button", "proposal-submit", "Send to committee");
    submit.setAttribute("type", "submit");
    const status = el("p", "proposal-status");

    form.addEventListener("submit", (event) => {
      event.preventDefault();
      const text = textarea.value.trim();
      if (!text) {
        status.textContent = "Please enter a translation first.";
        status.dataset.kind = "blocked";
        return;
      }
      this.client
        .submitProposal({
          node: nodeId,
          language: this.language === "en" ? "fr" : this.language,
          text,
          submitter: this.submitter,
        })
        .then((proposal: ProposalOut) => {
          status.textContent = `Thanks — proposal ${proposal.id} is with the committee.`;
          status.dataset.kind = "confirmed";
          status.dataset.proposalId = proposal.id;
          textarea.value = "";
        })
        .catch((error: unknown) => {
          // Keep the typed text so the user can retry.
          status.textContent = `Could not submit (${String(error)}). Your text is kept — retry below.`;
          status.dataset.kind = "error";
        });
    });

    form.appendChild(textarea);
    form.appendChild(submit);
    form.appendChild(status);
    section.appendChild(toggle);
    section.appendChild(form);
    return section;
  }
}
