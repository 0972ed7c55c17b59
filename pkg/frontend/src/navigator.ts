// The navigable topic map: renders the focus+context subgraph as a radial
// SVG, refocuses on click, keeps history for back navigation, and drives
// the search box, language toggle and context panel.

import type { ApiClient, Language, NavigateResponse } from "./api.js";
import { LayoutNode, layoutSubgraph, toCartesian } from "./layout.js";
import { ContextPanel } from "./panel.js";
import { ViewHistory, ViewState } from "./state.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const VIEWPORT_RADIUS = 320;

export interface NavigatorOptions {
  radius?: number;
  language?: Language;
  submitter?: string;
}

export class TopicNavigator {
  readonly history: ViewHistory;
  private readonly map: HTMLElement;
  private readonly panel: ContextPanel;
  private readonly status: HTMLElement;
  private readonly searchBox: HTMLInputElement;
  private readonly languageToggle: HTMLButtonElement;
  private readonly searchResults: HTMLElement;
  private current: NavigateResponse | null = null;
  private inflight = 0;

  constructor(
    private readonly container: HTMLElement,
    private readonly client: ApiClient,
    options: NavigatorOptions = {},
  ) {
    this.history = new ViewHistory({
      focus: "ROOT",
      language: options.language ?? "en",
      radius: options.radius ?? 1,
    });

    const header = document.createElement("header");
    header.className = "toolbar";
    this.searchBox = document.createElement("input");
    this.searchBox.className = "search-box";
    this.searchBox.setAttribute("placeholder", "Search topics…");
    this.searchBox.addEventListener("keydown", (event) => {
      if ((event as KeyboardEvent).key === "Enter") {
        void this.runSearch(this.searchBox.value);
      }
    });
    this.languageToggle = document.createElement("button");
    this.languageToggle.className = "language-toggle";
    this.languageToggle.addEventListener("click", () => void this.toggleLanguage());
    const back = document.createElement("button");
    back.className = "back-button";
    back.textContent = "◀ Back";
    back.addEventListener("click", () => void this.goBack());
    header.append(back, this.searchBox, this.languageToggle);

    this.status = document.createElement("div");
    this.status.className = "status-line";
    this.searchResults = document.createElement("div");
    this.searchResults.className = "search-results";

    this.map = document.createElement("div");
    this.map.className = "topic-map";

    const main = document.createElement("div");
    main.className = "portal-main";
    main.appendChild(this.map);
    this.panel = new ContextPanel(main, client, options.submitter);
    this.panel.connect({ onRefocus: (nodeId) => void this.refocus(nodeId) });

    container.append(header, this.status, this.searchResults, main);
    this.syncToggleLabel();
  }

  get view(): ViewState {
    return this.history.current;
  }

  async start(focus = "ROOT"): Promise<void> {
    this.history.replace({ ...this.view, focus });
    await this.load();
  }

  async refocus(nodeId: string): Promise<void> {
    if (nodeId === this.view.focus) return;
    this.history.push({ ...this.view, focus: nodeId });
    await this.load();
  }

  async goBack(): Promise<void> {
    if (this.history.back() !== undefined) {
      await this.load();
    }
  }

  async toggleLanguage(): Promise<void> {
    const language: Language = this.view.language === "en" ? "fr" : "en";
    this.history.replace({ ...this.view, language });
    this.syncToggleLabel();
    await this.load();
  }

  private syncToggleLabel(): void {
    this.languageToggle.textContent =
      this.view.language === "en" ? "Français" : "English";
  }

  private async load(): Promise<void> {
    const { focus, radius, language } = this.view;
    const ticket = ++this.inflight;
    try {
      const response = await this.client.navigate(focus, radius, language);
      if (ticket !== this.inflight) return; // superseded request
      this.current = response;
      this.render(response);
      this.status.textContent = "";
    } catch (error) {
      // A stale or vanished node: fall back to the root with a notice.
      if (focus !== "ROOT") {
        this.status.textContent = `Topic ${focus} is gone — back to the overview.`;
        this.history.replace({ ...this.view, focus: "ROOT" });
        await this.load();
      } else {
        this.status.textContent = `Cannot reach the portal: ${String(error)}`;
      }
    }
  }

  private render(response: NavigateResponse): void {
    const layout = layoutSubgraph(response, {
      viewportRadius: VIEWPORT_RADIUS,
      hopBudget: Math.max(response.radius, 1),
    });
    const size = VIEWPORT_RADIUS * 2 + 40;
    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("viewBox", `${-size / 2} ${-size / 2} ${size} ${size}`);
    svg.setAttribute("class", "map-svg");

    const positions = new Map<string, { x: number; y: number }>();
    for (const node of layout) {
      positions.set(node.nodeId, toCartesian(node));
    }
    for (const arc of response.arcs) {
      const from = positions.get(arc.from);
      const to = positions.get(arc.to);
      if (!from || !to) continue;
      const line = document.createElementNS(SVG_NS, "line");
      line.setAttribute("x1", String(from.x));
      line.setAttribute("y1", String(from.y));
      line.setAttribute("x2", String(to.x));
      line.setAttribute("y2", String(to.y));
      line.setAttribute("class", `arc arc-${arc.kind}`);
      svg.appendChild(line);
    }
    for (const node of layout) {
      svg.appendChild(this.renderNode(node, positions.get(node.nodeId)!));
    }
    this.map.innerHTML = "";
    this.map.appendChild(svg);
    this.panel.render(response.context, this.view.language as Language);
  }

  private renderNode(node: LayoutNode, at: { x: number; y: number }): SVGElement {
    const group = document.createElementNS(SVG_NS, "g");
    group.setAttribute("class", `node node-${node.kind}${node.ring === 0 ? " node-focus" : ""}`);
    group.setAttribute("transform", `translate(${at.x} ${at.y})`);
    group.setAttribute("data-node-id", node.nodeId);
    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("r", node.ring === 0 ? "14" : "8");
    const label = document.createElementNS(SVG_NS, "text");
    label.textContent = node.displayLabel;
    label.setAttribute("dy", "-14");
    const hover = document.createElementNS(SVG_NS, "title");
    hover.textContent = node.fullLabel;
    group.append(hover, circle, label);
    group.addEventListener("click", () => void this.refocus(node.nodeId));
    return group;
  }

  private async runSearch(query: string): Promise<void> {
    if (!query.trim()) return;
    this.searchResults.innerHTML = "";
    const response = await this.client.search(query, this.view.language);
    if (!response.found) {
      const message = document.createElement("p");
      message.className = "search-miss";
      message.textContent = response.message ?? "No match.";
      this.searchResults.appendChild(message);
      return;
    }
    const list = document.createElement("ul");
    for (const hit of response.results) {
      const item = document.createElement("li");
      const button = document.createElement("button");
      button.className = "search-hit";
      button.textContent =
        `${hit.labels[this.view.language] ?? hit.labels["en"]} (${hit.internal_hit_count} articles)`;
      button.dataset.nodeId = hit.node;
      button.addEventListener("click", () => {
        this.searchResults.innerHTML = "";
        void this.refocus(hit.node);
      });
      item.appendChild(button);
      list.appendChild(item);
    }
    this.searchResults.appendChild(list);
  }
}
