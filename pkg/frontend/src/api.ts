// Typed client for the portal HTTP API. The UI consumes the service
// exclusively through this interface, which also makes it trivial to swap
// in recorded fixtures for tests.

export type Language = "en" | "fr";

export interface SubgraphNode {
  id: string;
  label: string;
  kind: string;
  depth: number;
  ring: number;
}

export interface SubgraphArc {
  from: string;
  to: string;
  kind: string;
  provenance: string;
}

export interface MetaQueryOut {
  provider: string;
  url: string;
  keywords: string[];
}

export interface ArticleSummary {
  id: string;
  title: string;
  year: number | null;
  context: string;
  authors: string[];
}

export interface ContextBlock {
  node: string;
  labels: Record<string, string>;
  cluster: string[];
  metaqueries: MetaQueryOut[];
  internal_hits: ArticleSummary[];
  related: string[];
}

export interface NavigateResponse {
  focus: string;
  radius: number;
  language: string;
  nodes: SubgraphNode[];
  arcs: SubgraphArc[];
  context: ContextBlock;
}

export interface SearchNodeHit {
  node: string;
  labels: Record<string, string>;
  kind: string;
  internal_hit_count: number;
  top_hits: ArticleSummary[];
}

export interface SearchResponse {
  query: string;
  language: string;
  found: boolean;
  message: string | null;
  results: SearchNodeHit[];
}

export interface ProposalBody {
  node: string;
  language: Language;
  text: string;
  submitter: string;
}

export interface ProposalOut {
  id: string;
  node: string;
  language: string;
  text: string;
  submitter: string;
  state: string;
  validations: string[];
}

export interface ApiClient {
  navigate(nodeId: string, radius: number, lang: Language): Promise<NavigateResponse>;
  search(q: string, lang: Language): Promise<SearchResponse>;
  submitProposal(body: ProposalBody): Promise<ProposalOut>;
}

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

export class HttpApiClient implements ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: typeof fetch = fetch.bind(globalThis),
  ) {}

  private async get<T>(path: string): Promise<T> {
    const response = await this.fetchImpl(this.base + path);
    if (!response.ok) {
      throw new ApiError(response.status, await response.text());
    }
    return response.json() as Promise<T>;
  }

  navigate(nodeId: string, radius: number, lang: Language): Promise<NavigateResponse> {
    const id = encodeURIComponent(nodeId).replace(/%2F/g, "/");
    return this.get(`/api/v1/ontology/node/${id}?radius=${radius}&lang=${lang}`);
  }

  search(q: string, lang: Language): Promise<SearchResponse> {
    return this.get(`/api/v1/search?q=${encodeURIComponent(q)}&lang=${lang}`);
  }

  async submitProposal(body: ProposalBody): Promise<ProposalOut> {
    const response = await this.fetchImpl(this.base + "/api/v1/translations/proposals", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!response.ok) {
      throw new ApiError(response.status, await response.text());
    }
    return response.json() as Promise<ProposalOut>;
  }
}
