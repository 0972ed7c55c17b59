"""FastAPI facade over the portal: navigation, search, articles, workflow."""

from __future__ import annotations

from fastapi import FastAPI, HTTPException, Query, Response
from fastapi.responses import PlainTextResponse
from fastapi.staticfiles import StaticFiles

from ontobib import metaquery, textpipe
from ontobib.corpus.model import ArticleRecord, search_internal
from ontobib.ontology.model import UnknownNode, is_keyword_endpoint
from ontobib.ontology.ops import focus_context
from ontobib.ontology.snapshot import export_snapshot
from ontobib.service.schemas import (
    AccessOut,
    ArcOut,
    ArticlePage,
    ArticleSummary,
    ContextBlockOut,
    EntryIn,
    EntryOut,
    MetaQueryOut,
    NavigateResponse,
    NodeOut,
    ProposalIn,
    ProposalOut,
    SearchNodeHit,
    SearchResponse,
    ValidateIn,
)
from ontobib.service.state import Portal, PortalState
from ontobib.translation.feed import FILTER_ALL, FILTER_OPEN, feed as render_feed
from ontobib.translation.registry import (
    AlreadyClosed,
    EmptyText,
    NotCommitteeMember,
    SelfValidation,
    UnknownProposal,
)
from ontobib.translation.resolve import QueryNotFound, resolve_query

_TOP_HITS_PER_NODE = 3


def _metaquery_out(query: metaquery.MetaQuery) -> MetaQueryOut:
    return MetaQueryOut(provider=query.provider, url=query.url, keywords=list(query.keywords))


def _article_summary(record: ArticleRecord) -> ArticleSummary:
    return ArticleSummary(
        id=record.id, title=record.title, year=record.year,
        context=record.context, authors=list(record.authors),
    )


def _labels(state: PortalState, node_id: str) -> dict[str, str]:
    return {
        "en": state.ontology.node(node_id).label,
        "fr": state.registry.label_for(node_id, "fr", state.ontology),
    }


def _context_block(portal: Portal, state: PortalState, node_id: str) -> ContextBlockOut:
    cluster = metaquery.ordered_cluster(state.ontology, node_id)
    queries = metaquery.context_queries(state.ontology, node_id, portal.config.providers)
    hits = search_internal(state.corpus, set(cluster))[:portal.config.page_size]
    related = [
        neighbor for neighbor in state.ontology.related_neighbors(node_id)
        if not is_keyword_endpoint(neighbor)
    ]
    return ContextBlockOut(
        node=node_id,
        labels=_labels(state, node_id),
        cluster=cluster,
        metaqueries=[_metaquery_out(q) for q in queries],
        internal_hits=[_article_summary(r) for r in hits],
        related=related,
    )


def create_app(portal: Portal) -> FastAPI:
    app = FastAPI(title="ontobib", version="0.1.0")

    def _check_language(lang: str) -> str:
        if lang not in textpipe.LANGUAGES:
            raise HTTPException(status_code=400, detail=f"unknown language {lang!r}")
        return lang

    @app.get("/api/v1/ontology/node/{node_id:path}", response_model=NavigateResponse)
    def navigate(node_id: str, radius: int = Query(default=1, ge=1), lang: str = "en"):
        _check_language(lang)
        state = portal.state
        try:
            view = focus_context(state.ontology, node_id, radius)
        except UnknownNode:
            raise HTTPException(status_code=404, detail=f"unknown ontology node {node_id!r}")
        nodes = [
            NodeOut(
                id=node.id,
                label=state.ontology.node(node.id).label if lang == "en"
                else state.registry.label_for(node.id, lang, state.ontology),
                kind=node.kind,
                depth=node.depth,
                ring=view.rings[node.id],
            )
            for node in sorted(view.nodes.values(), key=lambda n: n.id)
        ]
        arcs = [
            ArcOut(source=arc.source, target=arc.target, kind=arc.kind, provenance=arc.provenance)
            for arc in sorted(view.arcs, key=lambda a: (a.kind, a.source, a.target, a.provenance))
        ]
        return NavigateResponse(
            focus=node_id, radius=radius, language=lang,
            nodes=nodes, arcs=arcs,
            context=_context_block(portal, state, node_id),
        )

    @app.get("/api/v1/search", response_model=SearchResponse)
    def search(q: str = Query(default=""), lang: str = "en"):
        _check_language(lang)
        if not q.strip():
            raise HTTPException(status_code=400, detail="query must not be empty")
        state = portal.state
        try:
            ranked = resolve_query(q, lang, state.ontology, state.registry)
        except QueryNotFound as exc:
            return SearchResponse(query=q, language=lang, found=False, message=exc.message)
        results = []
        for node_id in ranked:
            cluster = metaquery.ordered_cluster(state.ontology, node_id)
            hits = search_internal(state.corpus, set(cluster))
            results.append(SearchNodeHit(
                node=node_id,
                labels=_labels(state, node_id),
                kind=state.ontology.node(node_id).kind,
                internal_hit_count=len(hits),
                top_hits=[_article_summary(r) for r in hits[:_TOP_HITS_PER_NODE]],
            ))
        return SearchResponse(query=q, language=lang, found=True, results=results)

    @app.get("/api/v1/articles/search", response_model=list[ArticleSummary])
    def article_search(q: str = Query(default=""), lang: str = "en"):
        _check_language(lang)
        if not q.strip():
            raise HTTPException(status_code=400, detail="query must not be empty")
        state = portal.state
        lemmas = textpipe.extract_keywords(q, lang)
        hits = search_internal(state.corpus, lemmas)[:portal.config.page_size]
        return [_article_summary(r) for r in hits]

    def _record_or_404(state: PortalState, article_id: str) -> ArticleRecord:
        record = state.corpus.records.get(article_id)
        if record is None:
            raise HTTPException(status_code=404, detail=f"unknown article {article_id!r}")
        return record

    @app.get("/api/v1/articles/{article_id:path}/bibtex", response_class=PlainTextResponse)
    def article_bibtex(article_id: str):
        record = _record_or_404(portal.state, article_id)
        return PlainTextResponse(metaquery.export_bibtex(record), media_type="text/plain; charset=utf-8")

    @app.get("/api/v1/articles/{article_id:path}", response_model=ArticlePage)
    def article(article_id: str):
        state = portal.state
        record = _record_or_404(state, article_id)
        access = metaquery.scholar_fallback(record, portal.scholar_provider())
        if isinstance(access, metaquery.DirectUri):
            access_out = AccessOut(kind="direct", uri=access.uri)
        else:
            access_out = AccessOut(kind="scholar", metaquery=_metaquery_out(access))
        return ArticlePage(
            id=record.id, title=record.title, year=record.year, context=record.context,
            authors=list(record.authors), uri=record.uri,
            assignments=[[node, status] for node, status in record.assignments],
            metadata=[[key, value] for key, value in metaquery.export_embedded_metadata(record)],
            bibtex_url=f"/api/v1/articles/{record.id}/bibtex",
            access=access_out,
        )

    @app.post("/api/v1/translations/proposals", response_model=ProposalOut, status_code=201)
    def submit_proposal(body: ProposalIn):
        _check_language(body.language)
        try:
            proposal, _ = portal.submit_proposal(body.node, body.language, body.text, body.submitter)
        except UnknownNode:
            raise HTTPException(status_code=404, detail=f"unknown ontology node {body.node!r}")
        except EmptyText as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return ProposalOut(
            id=proposal.id, node=proposal.node, language=proposal.language,
            text=proposal.text, submitter=proposal.submitter, state=proposal.state,
            validations=sorted(proposal.validations),
        )

    @app.post("/api/v1/translations/proposals/{proposal_id}/validate", response_model=ProposalOut)
    def validate_proposal(proposal_id: str, body: ValidateIn):
        try:
            proposal = portal.validate_proposal(proposal_id, body.member, body.verdict)
        except UnknownProposal:
            raise HTTPException(status_code=404, detail=f"unknown proposal {proposal_id!r}")
        except NotCommitteeMember as exc:
            raise HTTPException(status_code=403, detail=str(exc))
        except (AlreadyClosed, SelfValidation) as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return ProposalOut(
            id=proposal.id, node=proposal.node, language=proposal.language,
            text=proposal.text, submitter=proposal.submitter, state=proposal.state,
            validations=sorted(proposal.validations),
        )

    @app.post("/api/v1/translations/entries", response_model=EntryOut, status_code=201)
    def register_entry(body: EntryIn):
        _check_language(body.language)
        try:
            entry = portal.register_entry(body.node, body.language, body.text)
        except UnknownNode:
            raise HTTPException(status_code=404, detail=f"unknown ontology node {body.node!r}")
        except EmptyText as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return EntryOut(node=entry.node, language=entry.language, text=entry.text,
                        lemmas=sorted(entry.lemmas))

    @app.get("/api/v1/feeds/translations.rss")
    def translations_feed(filter: str = "all"):
        if filter not in (FILTER_OPEN, FILTER_ALL):
            raise HTTPException(status_code=400, detail=f"unknown filter {filter!r}")
        document = render_feed(
            portal.state.registry, filter,
            channel_title=portal.config.feed_title,
            channel_link=portal.config.feed_link,
            channel_description=portal.config.feed_description,
        )
        return Response(content=document, media_type="application/rss+xml")

    @app.get("/api/v1/ontology/snapshot.xml")
    def ontology_snapshot():
        return Response(content=export_snapshot(portal.state.ontology), media_type="application/xml")

    static_dir = portal.config.static_dir
    if static_dir is not None and static_dir.exists():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
