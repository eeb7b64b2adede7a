// App shell: onboarding, screen routing, polling refresh, and the mapping
// from UI actions onto service calls. The server projection is the only
// state; every mutation response (and every poll that observes a newer
// event sequence number) replaces it.

import { Client, ServiceError, type SessionInfo } from "./api";
import { affordancesFor } from "./affordances";
import { clear, h } from "./dom";
import type { DropTarget, DragSource } from "./dnd";
import type { DiscussionView } from "./types";
import {
  renderClusterReviewModal,
  renderOnboarding,
  renderOverview,
  renderSummarizeModal,
  renderThread,
  renderThreadModal,
  renderThreadReviewModal,
  renderToast,
  renderTopBar,
  showOnboardingError,
  type Actions,
} from "./render";

export interface AppConfig {
  baseUrl: string;
  root: HTMLElement;
  pollMs?: number;
  storage?: Pick<Storage, "getItem" | "setItem" | "removeItem">;
}

const SESSION_KEY = "roundtable-session";

export class App {
  readonly client: Client;
  private readonly root: HTMLElement;
  private readonly pollMs: number;
  private readonly storage: AppConfig["storage"];
  private session: SessionInfo | null = null;
  private seq = 0;
  view: DiscussionView | null = null;
  private screen: "overview" | "thread" = "overview";
  private currentThreadId: string | null = null;
  private modal: HTMLElement | null = null;
  private pollTimer: ReturnType<typeof setInterval> | null = null;

  constructor(config: AppConfig) {
    this.client = new Client(config.baseUrl);
    this.root = config.root;
    this.pollMs = config.pollMs ?? 2000;
    this.storage = config.storage;
  }

  async start(): Promise<void> {
    const saved = this.storage?.getItem(SESSION_KEY);
    if (saved) {
      try {
        this.session = JSON.parse(saved) as SessionInfo;
        this.client.token = this.session.token;
        await this.refresh(true);
        this.startPolling();
        return;
      } catch {
        this.storage?.removeItem(SESSION_KEY);
        this.session = null;
        this.client.token = null;
      }
    }
    await this.showOnboarding();
  }

  stop(): void {
    if (this.pollTimer !== null) clearInterval(this.pollTimer);
    this.pollTimer = null;
  }

  // ------------------------------------------------------------------

  private async showOnboarding(): Promise<void> {
    const articles = await this.client.getDiscussions();
    clear(this.root);
    this.root.append(
      renderOnboarding(articles, (username, level, articleRef) => {
        void this.join(username, level, articleRef);
      }),
    );
  }

  private async join(username: string, level: string, articleRef: string): Promise<void> {
    try {
      const session = await this.client.register(username, level, articleRef);
      this.session = session;
      this.client.token = session.token;
      this.storage?.setItem(SESSION_KEY, JSON.stringify(session));
      await this.refresh(true);
      this.startPolling();
    } catch (error) {
      if (error instanceof ServiceError) {
        showOnboardingError(
          this.root,
          error.code === "conflict" ? "That username is already taken here." : error.message,
        );
        return;
      }
      throw error;
    }
  }

  private startPolling(): void {
    this.stop();
    this.pollTimer = setInterval(() => {
      void this.poll();
    }, this.pollMs);
  }

  private async poll(): Promise<void> {
    if (!this.session) return;
    try {
      const envelope = await this.client.view(this.session.discussion_id);
      if (envelope.seq !== this.seq) {
        this.seq = envelope.seq;
        this.view = envelope.view;
        this.render();
      }
    } catch {
      // transient; next tick retries
    }
  }

  async refresh(force = false): Promise<void> {
    if (!this.session) return;
    const envelope = await this.client.view(this.session.discussion_id);
    if (force || envelope.seq !== this.seq) {
      this.seq = envelope.seq;
      this.view = envelope.view;
      this.render();
    }
  }

  private adopt(body: { seq: number; view: DiscussionView }): void {
    this.seq = body.seq;
    this.view = body.view;
    this.render();
  }

  // ------------------------------------------------------------------

  private toast(message: string): void {
    this.root.querySelector("#toast")?.remove();
    this.root.append(renderToast(message));
  }

  private async guarded<T extends { seq: number; view: DiscussionView }>(
    call: () => Promise<T>,
  ): Promise<T | null> {
    try {
      const body = await call();
      this.adopt(body);
      return body;
    } catch (error) {
      if (error instanceof ServiceError) {
        this.toast(`${error.code}: ${error.message}`);
        if (error.code === "stale-activity" || error.code === "conflict") {
          await this.refresh(true);
        }
        return null;
      }
      throw error;
    }
  }

  private actions(): Actions {
    const app = this;
    return {
      openThread(threadId) {
        app.screen = "thread";
        app.currentThreadId = threadId;
        app.render();
      },
      backToOverview() {
        app.screen = "overview";
        app.currentThreadId = null;
        app.render();
      },
      postComment(threadId, body, parentId) {
        void app.guarded(() => app.client.postComment(threadId, body, parentId));
      },
      toggleLike(commentId) {
        void app.guarded(() => app.client.toggleLike(commentId));
      },
      propose(source: DragSource, target: DropTarget) {
        void app
          .guarded(() =>
            app.client.proposeCluster(
              source.threadId,
              source.commentId,
              target.kind === "comment"
                ? { anchorCommentId: target.commentId }
                : { clusterId: target.clusterId },
            ),
          )
          .then((body) => {
            if (body) app.toast("Cluster proposed; it stays visible only to you until reviewed.");
          });
      },
      openClusterReviews() {
        void app.openClusterReviews();
      },
      voteCluster(activityId, verdict) {
        void app
          .guarded(() => app.client.voteCluster(activityId, verdict))
          .then((body) => {
            if (!body) return void app.openClusterReviews();
            const outcome = (body as { outcome?: { status: string } }).outcome;
            if (outcome?.status === "accepted") app.toast("Cluster finalized for everyone.");
            if (outcome?.status === "denied") app.toast("Proposal declined and removed.");
            void app.openClusterReviews();
          });
      },
      openSummarize(clusterId) {
        void app.openSummarize(clusterId);
      },
      saveSummary(clusterId, text, aiText) {
        void app
          .guarded(() => app.client.saveSummary(clusterId, text, aiText))
          .then((body) => {
            if (body) app.closeModal();
          });
      },
      openThreadModal() {
        void app.openThreadModal();
      },
      proposeThread(topic, question, source) {
        void app
          .guarded(() => app.client.proposeThread(app.session!.discussion_id, topic, question, source))
          .then((body) => {
            if (body) {
              app.closeModal();
              app.toast("Thread suggested; other LV2 users will review it.");
            }
          });
      },
      openThreadReviews() {
        void app.openThreadReviews();
      },
      voteThread(proposalId, verdict) {
        void app
          .guarded(() => app.client.voteThread(proposalId, verdict))
          .then((body) => {
            if (!body) return void app.openThreadReviews();
            const outcome = (body as { outcome?: { status: string } }).outcome;
            if (outcome?.status === "accepted")
              app.toast("New thread created; it appears below the original topics.");
            void app.openThreadReviews();
          });
      },
      closeModal() {
        app.closeModal();
      },
    };
  }

  private async openClusterReviews(): Promise<void> {
    await this.refresh(true);
    if (!this.view) return;
    this.showModal(
      renderClusterReviewModal(this.view.cluster_review_queue ?? [], this.view, this.actions()),
    );
  }

  private async openSummarize(clusterId: string): Promise<void> {
    try {
      const { draft } = await this.client.summaryDraft(clusterId);
      this.showModal(renderSummarizeModal(clusterId, draft, this.actions()));
    } catch (error) {
      if (error instanceof ServiceError) this.toast(`${error.code}: ${error.message}`);
      else throw error;
    }
  }

  private async openThreadModal(): Promise<void> {
    if (!this.session) return;
    try {
      const { pool } = await this.client.suggestionPool(this.session.discussion_id);
      this.showModal(renderThreadModal(pool, this.actions()));
    } catch (error) {
      if (error instanceof ServiceError) this.toast(`${error.code}: ${error.message}`);
      else throw error;
    }
  }

  private async openThreadReviews(): Promise<void> {
    await this.refresh(true);
    if (!this.view) return;
    this.showModal(renderThreadReviewModal(this.view.thread_review_queue ?? [], this.actions()));
  }

  private showModal(modal: HTMLElement): void {
    this.modal?.remove();
    this.modal = modal;
    this.root.append(modal);
  }

  private closeModal(): void {
    this.modal?.remove();
    this.modal = null;
  }

  // ------------------------------------------------------------------

  render(): void {
    if (!this.view) return;
    const can = affordancesFor(this.view.viewer.level);
    const actions = this.actions();
    const hadModal = this.modal;
    clear(this.root);
    this.root.append(renderTopBar(this.view, can, actions));
    if (this.screen === "thread" && this.currentThreadId) {
      const thread = this.view.threads.find((t) => t.thread_id === this.currentThreadId);
      if (thread) {
        this.root.append(renderThread(this.view, thread, can, actions));
      } else {
        this.screen = "overview";
        this.root.append(renderOverview(this.view, actions));
      }
    } else {
      this.root.append(renderOverview(this.view, actions));
    }
    if (hadModal) this.root.append(hadModal);
  }
}

export function mount(config: AppConfig): App {
  const app = new App(config);
  void app.start();
  return app;
}

declare global {
  interface Window {
    roundtableApp?: App;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  const params = new URLSearchParams(window.location.search);
  window.roundtableApp = mount({
    baseUrl: params.get("api") ?? "http://127.0.0.1:8000",
    root: document.getElementById("app") as HTMLElement,
    storage: window.localStorage,
  });
}

export { h };
