// Screen renderers. Pure functions from the server projection (plus
// callbacks) to DOM; the app swaps screens wholesale on refresh, so the
// DOM always mirrors the latest projection.

import type { Affordances } from "./affordances";
import { h, timestamp } from "./dom";
import { wireDragSource, wireDropTarget, type DropTarget, type DragSource } from "./dnd";
import type {
  ActivityView,
  CommentView,
  DiscussionView,
  PoolPair,
  ProposalView,
  SnapshotItem,
  SummaryDraft,
  ThreadView,
} from "./types";

export interface Actions {
  openThread(threadId: string): void;
  backToOverview(): void;
  postComment(threadId: string, body: string, parentId?: string): void;
  toggleLike(commentId: string): void;
  propose(source: DragSource, target: DropTarget): void;
  openClusterReviews(): void;
  voteCluster(activityId: string, verdict: "approve" | "decline"): void;
  openSummarize(clusterId: string): void;
  saveSummary(clusterId: string, text: string, aiText: string): void;
  openThreadModal(): void;
  proposeThread(topic: string, question: string, source: "user_authored" | "ai_suggested"): void;
  openThreadReviews(): void;
  voteThread(proposalId: string, verdict: "approve" | "decline"): void;
  closeModal(): void;
}

// ---------------------------------------------------------------------------
// onboarding

export function renderOnboarding(
  articles: { article_ref: string; discussion_id: string }[],
  onJoin: (username: string, level: string, articleRef: string) => void,
): HTMLElement {
  const username = h("input", {
    id: "username-input",
    placeholder: "username",
    oninput: update,
  }) as HTMLInputElement;
  const level = h(
    "select",
    { id: "level-select", onchange: update },
    h("option", { value: "" }, "choose your assigned level"),
    h("option", { value: "LV0" }, "LV0 — propose clusters"),
    h("option", { value: "LV1" }, "LV1 — review and summarize"),
    h("option", { value: "LV2" }, "LV2 — propose and review threads"),
  ) as HTMLSelectElement;
  const article = h(
    "select",
    { id: "article-select", onchange: update },
    ...articles.map((a) => h("option", { value: a.article_ref }, a.article_ref)),
  ) as HTMLSelectElement;
  const join = h(
    "button",
    {
      id: "join-btn",
      disabled: true,
      onclick: () => onJoin(username.value.trim(), level.value, article.value),
    },
    "Join the discussion",
  ) as HTMLButtonElement;
  const error = h("p", { id: "onboarding-error", class: "error" });

  function update(): void {
    join.disabled = !(username.value.trim() && level.value && article.value);
  }

  return h(
    "div",
    { id: "onboarding" },
    h("h1", {}, "Join a discussion"),
    h("p", {}, "Set your username and the level you were assigned."),
    h("div", { class: "field" }, username),
    h("div", { class: "field" }, level),
    h("div", { class: "field" }, article),
    join,
    error,
  );
}

export function showOnboardingError(root: ParentNode, message: string): void {
  const slot = root.querySelector("#onboarding-error");
  if (slot) slot.textContent = message;
}

// ---------------------------------------------------------------------------
// shared chrome

export function renderTopBar(
  view: DiscussionView,
  can: Affordances,
  actions: Actions,
): HTMLElement {
  const pendingClusterReviews = view.cluster_review_queue?.length ?? 0;
  const pendingThreadReviews = view.thread_review_queue?.length ?? 0;
  return h(
    "header",
    { id: "topbar" },
    h("span", { class: "who" }, `${view.viewer.username} (${view.viewer.level})`),
    can.canReviewClusters &&
      h(
        "button",
        { id: "review-clusters-btn", onclick: () => actions.openClusterReviews() },
        `Review Clustered Comments (${pendingClusterReviews})`,
      ),
    can.canProposeThread &&
      h(
        "button",
        { id: "suggest-thread-btn", onclick: () => actions.openThreadModal() },
        "Suggest New Thread",
      ),
    can.canReviewThreads &&
      h(
        "button",
        { id: "review-threads-btn", onclick: () => actions.openThreadReviews() },
        `Review Threads (${pendingThreadReviews})`,
      ),
  );
}

// ---------------------------------------------------------------------------
// overview: guiding topics with their cluster summaries

export function renderOverview(view: DiscussionView, actions: Actions): HTMLElement {
  return h(
    "main",
    { id: "overview" },
    h("h2", {}, "Discussions About the Article"),
    ...view.threads.map((thread) =>
      h(
        "section",
        {
          class: `thread-card${thread.origin === "user_created" ? " user-created" : ""}`,
          dataset: { threadId: thread.thread_id },
          onclick: () => actions.openThread(thread.thread_id),
        },
        h("h3", { class: "thread-topic" }, thread.topic),
        h(
          "div",
          { class: "thread-summaries" },
          ...thread.summaries.map((summary) =>
            h(
              "p",
              { class: "summary-chip" },
              h("span", { class: "summary-text" }, summary.text),
              " ",
              h("time", { class: "summary-time" }, timestamp(summary.created_at)),
            ),
          ),
        ),
        h(
          "p",
          { class: "thread-meta" },
          `${countComments(thread)} comments`,
        ),
      ),
    ),
  );
}

function countComments(thread: ThreadView): number {
  let total = 0;
  for (const item of thread.layout) {
    const comments = item.kind === "comment" ? [item.comment] : item.comments;
    for (const comment of comments) total += 1 + comment.replies.length;
  }
  return total;
}

// ---------------------------------------------------------------------------
// thread screen

export function renderThread(
  view: DiscussionView,
  thread: ThreadView,
  can: Affordances,
  actions: Actions,
): HTMLElement {
  const composerInput = h("textarea", {
    id: "comment-input",
    placeholder: "Write a comment",
  }) as HTMLTextAreaElement;
  const composer = h(
    "div",
    { id: "composer" },
    composerInput,
    h(
      "button",
      {
        id: "post-btn",
        onclick: () => {
          const body = composerInput.value.trim();
          if (body) actions.postComment(thread.thread_id, body);
        },
      },
      "Post",
    ),
  );

  const pendingHere = (view.my_pending_activities ?? []).filter(
    (a) => a.thread_id === thread.thread_id,
  );

  return h(
    "main",
    { id: "thread-view", dataset: { threadId: thread.thread_id } },
    h("button", { id: "back-btn", onclick: () => actions.backToOverview() }, "← All topics"),
    h("h2", { class: "thread-topic" }, thread.topic),
    h("p", { class: "guiding-question" }, thread.guiding_question),
    h(
      "div",
      { id: "layout" },
      ...thread.layout.map((item) =>
        item.kind === "comment"
          ? renderTopLevelComment(item.comment, thread, can, actions)
          : renderClusterBox(item, thread, can, actions),
      ),
    ),
    pendingHere.length > 0 ? renderPendingArrangements(pendingHere, thread) : null,
    composer,
  );
}

function renderTopLevelComment(
  comment: CommentView,
  thread: ThreadView,
  can: Affordances,
  actions: Actions,
): HTMLElement {
  const card = renderComment(comment, can, actions, true);
  card.classList.add("top-level");
  if (can.canDragCluster && !comment.deleted) {
    wireDragSource(card, { commentId: comment.comment_id, threadId: thread.thread_id });
    wireDropTarget(
      card,
      { kind: "comment", commentId: comment.comment_id, threadId: thread.thread_id },
      (source, target) => actions.propose(source, target),
    );
  }
  return card;
}

function renderComment(
  comment: CommentView,
  can: Affordances,
  actions: Actions,
  allowReply: boolean,
): HTMLElement {
  const replyInput = h("textarea", {
    class: "reply-input",
    placeholder: "Reply",
    hidden: true,
  }) as HTMLTextAreaElement;
  return h(
    "article",
    { class: `comment${comment.deleted ? " deleted" : ""}`, dataset: { commentId: comment.comment_id } },
    h(
      "header",
      {},
      h("strong", { class: "author" }, comment.author),
      " ",
      h("time", {}, timestamp(comment.created_at)),
      comment.edited_at ? h("em", { class: "edited" }, " (edited)") : null,
    ),
    h("p", { class: "body" }, comment.deleted ? "[removed by author]" : comment.body ?? ""),
    h(
      "footer",
      {},
      h(
        "button",
        {
          class: "like-btn",
          disabled: comment.deleted,
          onclick: () => actions.toggleLike(comment.comment_id),
        },
        `${comment.liked_by_viewer ? "♥" : "♡"} ${comment.like_count}`,
      ),
      allowReply && !comment.deleted
        ? h(
            "button",
            {
              class: "reply-btn",
              onclick: () => {
                replyInput.hidden = !replyInput.hidden;
                if (!replyInput.hidden) replyInput.focus();
              },
            },
            "Reply",
          )
        : null,
    ),
    allowReply
      ? h(
          "div",
          { class: "reply-composer" },
          replyInput,
          h(
            "button",
            {
              class: "send-reply-btn",
              hidden: true,
              onclick: () => {
                const body = replyInput.value.trim();
                if (body) actions.postComment(comment.thread_id, body, comment.comment_id);
              },
            },
            "Send",
          ),
        )
      : null,
    h(
      "div",
      { class: "replies" },
      ...comment.replies.map((reply) => renderComment(reply, can, actions, false)),
    ),
  );
}

function renderClusterBox(
  item: Extract<ThreadView["layout"][number], { kind: "cluster" }>,
  thread: ThreadView,
  can: Affordances,
  actions: Actions,
): HTMLElement {
  const box = h(
    "section",
    {
      class: `cluster-box${item.summarized ? " summarized" : ""}`,
      dataset: { clusterId: item.cluster_id },
    },
    item.summary
      ? h(
          "div",
          { class: "summary-banner" },
          h("p", { class: "summary-text" }, item.summary.text),
          h(
            "p",
            { class: "summary-meta" },
            `summarized by ${item.summary.author} · ${timestamp(item.summary.created_at)}`,
          ),
        )
      : null,
    !item.summarized && can.canSummarize
      ? h(
          "button",
          { class: "summarize-btn", onclick: () => actions.openSummarize(item.cluster_id) },
          "Summarize",
        )
      : null,
    ...item.comments.map((comment) => {
      const card = renderComment(comment, can, actions, !item.summarized);
      card.classList.add("clustered");
      if (can.canDragCluster && !item.summarized && !comment.deleted) {
        wireDragSource(card, { commentId: comment.comment_id, threadId: thread.thread_id });
      }
      return card;
    }),
  );
  if (can.canDragCluster && !item.summarized) {
    wireDropTarget(
      box,
      { kind: "cluster", clusterId: item.cluster_id, threadId: thread.thread_id },
      (source, target) => actions.propose(source, target),
    );
  }
  return box;
}

function renderPendingArrangements(pending: ActivityView[], thread: ThreadView): HTMLElement {
  const bodies = commentBodyIndex(thread);
  return h(
    "aside",
    { id: "my-pending" },
    h("h4", {}, "Your pending cluster proposals (visible only to you)"),
    ...pending.map((activity) =>
      h(
        "div",
        { class: "pending-activity", dataset: { activityId: activity.activity_id } },
        h(
          "p",
          { class: "pending-status" },
          `Accept(${activity.approve_count}/3) · Decline(${activity.decline_count}/3)`,
        ),
        renderSnapshot(activity.snapshot_after, bodies, "tentative"),
      ),
    ),
  );
}

// ---------------------------------------------------------------------------
// snapshots (used by the pending list and the review panes)

export function commentBodyIndex(thread: ThreadView): Map<string, string> {
  const bodies = new Map<string, string>();
  for (const item of thread.layout) {
    const comments = item.kind === "comment" ? [item.comment] : item.comments;
    for (const comment of comments) {
      bodies.set(comment.comment_id, comment.body ?? "[removed]");
      for (const reply of comment.replies) bodies.set(reply.comment_id, reply.body ?? "[removed]");
    }
  }
  return bodies;
}

export function renderSnapshot(
  items: SnapshotItem[],
  bodies: Map<string, string>,
  flavor: "before" | "after" | "tentative",
): HTMLElement {
  const describe = (id: string): string => {
    const body = bodies.get(id) ?? id;
    return body.length > 80 ? body.slice(0, 77) + "…" : body;
  };
  return h(
    "ol",
    { class: `snapshot snapshot-${flavor}` },
    ...items.map((item) =>
      item.kind === "comment"
        ? h("li", { class: "snap-comment" }, describe(item.comment_id ?? ""))
        : h(
            "li",
            { class: "snap-cluster" },
            h(
              "ul",
              {},
              ...(item.member_comment_ids ?? []).map((cid) =>
                h("li", { class: "snap-member" }, describe(cid)),
              ),
            ),
          ),
    ),
  );
}

// ---------------------------------------------------------------------------
// modals

export function renderModal(...children: (HTMLElement | null)[]): HTMLElement {
  return h("div", { id: "modal" }, h("div", { class: "modal-body" }, ...children));
}

export function renderClusterReviewModal(
  queue: ActivityView[],
  view: DiscussionView,
  actions: Actions,
): HTMLElement {
  const threadsById = new Map(view.threads.map((t) => [t.thread_id, t]));
  return renderModal(
    h("h3", {}, "Review Clustered Comments"),
    queue.length === 0 ? h("p", { class: "empty" }, "Nothing waiting for review.") : null,
    ...queue.map((activity) => {
      const thread = threadsById.get(activity.thread_id);
      const bodies = thread ? commentBodyIndex(thread) : new Map<string, string>();
      return h(
        "div",
        { class: "review-item", dataset: { activityId: activity.activity_id } },
        h("p", { class: "review-thread" }, thread ? thread.topic : activity.thread_id),
        h(
          "div",
          { class: "panes" },
          h("div", { class: "pane-before" }, h("h5", {}, "Before"),
            renderSnapshot(activity.snapshot_before, bodies, "before")),
          h("div", { class: "pane-after" }, h("h5", {}, "After"),
            renderSnapshot(activity.snapshot_after, bodies, "after")),
        ),
        h(
          "div",
          { class: "verdicts" },
          h(
            "button",
            {
              class: "approve-btn",
              disabled: activity.my_vote !== null,
              onclick: () => actions.voteCluster(activity.activity_id, "approve"),
            },
            `Approve (${activity.approve_count}/3)`,
          ),
          h(
            "button",
            {
              class: "decline-btn",
              disabled: activity.my_vote !== null,
              onclick: () => actions.voteCluster(activity.activity_id, "decline"),
            },
            `Decline (${activity.decline_count}/3)`,
          ),
        ),
      );
    }),
    h("button", { class: "close-btn", onclick: () => actions.closeModal() }, "Close"),
  );
}

export function renderSummarizeModal(
  clusterId: string,
  draft: SummaryDraft,
  actions: Actions,
): HTMLElement {
  const text = h("textarea", { id: "summary-text" }) as HTMLTextAreaElement;
  text.value = draft.text; // pre-filled AI suggestion, editable before save
  return renderModal(
    h("h3", {}, "Summarize this cluster"),
    h("p", { class: "hint" }, "An AI-suggested summary is pre-filled; revise it or write your own."),
    text,
    h(
      "div",
      {},
      h(
        "button",
        {
          id: "save-summary-btn",
          onclick: () => {
            const value = text.value.trim();
            if (value) actions.saveSummary(clusterId, value, draft.text);
          },
        },
        "Save summary",
      ),
      h("button", { class: "close-btn", onclick: () => actions.closeModal() }, "Cancel"),
    ),
  );
}

export function renderThreadModal(pool: PoolPair[], actions: Actions): HTMLElement {
  const topic = h("input", { id: "thread-topic-input", placeholder: "Topic", oninput: update });
  const question = h("input", {
    id: "thread-question-input",
    placeholder: "Guiding question",
    oninput: update,
  });
  const suggestion = pool[0];
  const useAi = h("input", {
    type: "checkbox",
    id: "use-ai-pair",
    onchange: () => {
      const checked = (useAi as HTMLInputElement).checked;
      if (checked && suggestion) {
        (topic as HTMLInputElement).value = suggestion.topic;
        (question as HTMLInputElement).value = suggestion.question;
      }
      (topic as HTMLInputElement).disabled = checked;
      (question as HTMLInputElement).disabled = checked;
      update();
    },
  }) as HTMLInputElement;
  const submit = h(
    "button",
    {
      id: "submit-thread-btn",
      disabled: true,
      onclick: () =>
        actions.proposeThread(
          (topic as HTMLInputElement).value.trim(),
          (question as HTMLInputElement).value.trim(),
          useAi.checked ? "ai_suggested" : "user_authored",
        ),
    },
    "Suggest thread",
  ) as HTMLButtonElement;

  function update(): void {
    submit.disabled = !(
      (topic as HTMLInputElement).value.trim() && (question as HTMLInputElement).value.trim()
    );
  }

  return renderModal(
    h("h3", {}, "Suggest New Thread"),
    suggestion
      ? h(
          "label",
          { class: "ai-pair" },
          useAi,
          ` Use the AI-suggested topic: “${suggestion.topic}”`,
        )
      : null,
    h("div", { class: "field" }, topic),
    h("div", { class: "field" }, question),
    submit,
    h("button", { class: "close-btn", onclick: () => actions.closeModal() }, "Cancel"),
  );
}

export function renderThreadReviewModal(
  queue: ProposalView[],
  actions: Actions,
): HTMLElement {
  return renderModal(
    h("h3", {}, "Review Suggested Threads"),
    queue.length === 0 ? h("p", { class: "empty" }, "No suggestions from other users.") : null,
    ...queue.map((proposal) =>
      h(
        "div",
        { class: "proposal-item", dataset: { proposalId: proposal.proposal_id } },
        h(
          "p",
          { class: "proposal-topic" },
          proposal.topic,
          proposal.source === "ai_suggested" ? h("em", {}, " (AI-suggested)") : null,
        ),
        h("p", { class: "proposal-question" }, proposal.guiding_question),
        h(
          "div",
          { class: "verdicts" },
          h(
            "button",
            {
              class: "approve-btn",
              disabled: proposal.my_vote !== null,
              onclick: () => actions.voteThread(proposal.proposal_id, "approve"),
            },
            `Approve (${proposal.approve_count}/3)`,
          ),
          h(
            "button",
            {
              class: "decline-btn",
              disabled: proposal.my_vote !== null,
              onclick: () => actions.voteThread(proposal.proposal_id, "decline"),
            },
            `Decline (${proposal.decline_count}/3)`,
          ),
        ),
      ),
    ),
    h("button", { class: "close-btn", onclick: () => actions.closeModal() }, "Close"),
  );
}

export function renderToast(message: string): HTMLElement {
  return h("div", { id: "toast" }, message);
}
