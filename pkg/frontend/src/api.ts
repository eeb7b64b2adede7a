// Typed client for the discussion service. Every UI action maps onto
// exactly one call here; errors surface the service's stable code names.

import type {
  ActivityView,
  DiscussionView,
  PoolPair,
  ProposalView,
  ReviewOutcome,
  SummaryDraft,
  UserInfo,
} from "./types";

export class ServiceError extends Error {
  constructor(
    public readonly code: string,
    message: string,
    public readonly status: number,
  ) {
    super(message);
    this.name = "ServiceError";
  }
}

export interface SessionInfo {
  token: string;
  user: UserInfo;
  discussion_id: string;
}

export interface ViewEnvelope {
  seq: number;
  view: DiscussionView;
}

interface MutationEnvelope extends Record<string, unknown> {
  seq: number;
  view: DiscussionView;
}

export class Client {
  constructor(
    public readonly baseUrl: string,
    public token: string | null = null,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = {};
    if (body !== undefined) headers["Content-Type"] = "application/json";
    if (this.token) headers["Authorization"] = `Bearer ${this.token}`;
    const response = await fetch(this.baseUrl + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json().catch(() => ({}));
    if (!response.ok) {
      const err = (payload as { error?: { code?: string; message?: string } }).error;
      throw new ServiceError(
        err?.code ?? "http-error",
        err?.message ?? `HTTP ${response.status}`,
        response.status,
      );
    }
    return payload as T;
  }

  createDiscussion(articleRef: string, articleText: string, topicPairs?: [string, string][]) {
    return this.request<{ discussion_id: string }>("POST", "/api/discussions", {
      article_ref: articleRef,
      article_text: articleText,
      topic_pairs: topicPairs,
    });
  }

  getDiscussions() {
    return this.request<{ discussion_id: string; article_ref: string }[]>(
      "GET",
      "/api/discussions",
    );
  }

  register(username: string, level: string, articleRef: string) {
    return this.request<SessionInfo>("POST", "/api/sessions", {
      username,
      level,
      article_ref: articleRef,
    });
  }

  view(discussionId: string) {
    return this.request<ViewEnvelope>("GET", `/api/discussions/${discussionId}/view`);
  }

  postComment(threadId: string, body: string, parentId?: string) {
    return this.request<MutationEnvelope>("POST", `/api/threads/${threadId}/comments`, {
      body,
      parent_id: parentId ?? null,
    });
  }

  editComment(commentId: string, body: string) {
    return this.request<MutationEnvelope>("PATCH", `/api/comments/${commentId}`, { body });
  }

  deleteComment(commentId: string) {
    return this.request<MutationEnvelope>("DELETE", `/api/comments/${commentId}`);
  }

  toggleLike(commentId: string) {
    return this.request<MutationEnvelope>("POST", `/api/comments/${commentId}/like`, {});
  }

  proposeCluster(
    threadId: string,
    movedCommentId: string,
    target: { anchorCommentId?: string; clusterId?: string },
  ) {
    return this.request<MutationEnvelope>("POST", `/api/threads/${threadId}/cluster-activities`, {
      moved_comment_id: movedCommentId,
      anchor_comment_id: target.anchorCommentId ?? null,
      target_cluster_id: target.clusterId ?? null,
    });
  }

  clusterReviews(discussionId: string) {
    return this.request<{ queue: ActivityView[] }>(
      "GET",
      `/api/discussions/${discussionId}/cluster-reviews`,
    );
  }

  voteCluster(activityId: string, verdict: "approve" | "decline") {
    return this.request<MutationEnvelope & { outcome: ReviewOutcome }>(
      "POST",
      `/api/cluster-activities/${activityId}/votes`,
      { verdict },
    );
  }

  summaryDraft(clusterId: string) {
    return this.request<{ draft: SummaryDraft }>("GET", `/api/clusters/${clusterId}/summary-draft`);
  }

  saveSummary(clusterId: string, text: string, aiSuggestedText: string) {
    return this.request<MutationEnvelope>("POST", `/api/clusters/${clusterId}/summary`, {
      text,
      ai_suggested_text: aiSuggestedText,
    });
  }

  proposeThread(
    discussionId: string,
    topic: string,
    question: string,
    source: "user_authored" | "ai_suggested",
  ) {
    return this.request<MutationEnvelope & { proposal: ProposalView }>(
      "POST",
      `/api/discussions/${discussionId}/thread-proposals`,
      { topic, guiding_question: question, source },
    );
  }

  threadReviews(discussionId: string) {
    return this.request<{ queue: ProposalView[] }>(
      "GET",
      `/api/discussions/${discussionId}/thread-reviews`,
    );
  }

  suggestionPool(discussionId: string) {
    return this.request<{ pool: PoolPair[] }>(
      "GET",
      `/api/discussions/${discussionId}/suggestion-pool`,
    );
  }

  voteThread(proposalId: string, verdict: "approve" | "decline") {
    return this.request<MutationEnvelope & { outcome: ReviewOutcome }>(
      "POST",
      `/api/thread-proposals/${proposalId}/votes`,
      { verdict },
    );
  }
}
