// Projection fixtures mirroring real service responses.

import type {
  ActivityView,
  CommentView,
  DiscussionView,
  SummaryView,
  ThreadView,
} from "../src/types";

let counter = 0;

export function comment(overrides: Partial<CommentView> = {}): CommentView {
  counter += 1;
  return {
    comment_id: `c${counter}`,
    thread_id: "t1",
    author_id: "u1",
    author: "ana",
    body: `comment body ${counter}`,
    deleted: false,
    parent_id: null,
    created_at: "2025-01-06T09:00:00+00:00",
    edited_at: null,
    like_count: 0,
    liked_by_viewer: false,
    replies: [],
    ...overrides,
  };
}

export function summary(overrides: Partial<SummaryView> = {}): SummaryView {
  return {
    summary_id: "s1",
    cluster_id: "k1",
    thread_id: "t1",
    author_id: "u2",
    author: "bea",
    text: "What the cluster converged on.",
    ai_suggested_text: "draft text",
    created_at: "2025-01-07T10:30:00+00:00",
    ...overrides,
  };
}

export function thread(overrides: Partial<ThreadView> = {}): ThreadView {
  return {
    thread_id: "t1",
    topic: "AI Image Generation Ethics",
    guiding_question: "Where should creators draw the line?",
    origin: "initial",
    ordering_index: 0,
    created_at: "2025-01-06T09:00:00+00:00",
    summaries: [],
    layout: [],
    ...overrides,
  };
}

export function pendingActivity(overrides: Partial<ActivityView> = {}): ActivityView {
  return {
    activity_id: "a1",
    thread_id: "t1",
    proposer_id: "u1",
    moved_comment_id: "c1",
    anchor_comment_id: "c2",
    target_cluster_id: null,
    status: "pending",
    created_at: "2025-01-06T09:05:00+00:00",
    approve_count: 2,
    decline_count: 0,
    snapshot_before: [
      { kind: "comment", comment_id: "c1" },
      { kind: "comment", comment_id: "c2" },
    ],
    snapshot_after: [
      { kind: "cluster", cluster_id: null, member_comment_ids: ["c2", "c1"] },
    ],
    my_vote: null,
    ...overrides,
  };
}

export function view(overrides: Partial<DiscussionView> = {}): DiscussionView {
  return {
    discussion_id: "d-test",
    article_ref: "cnn:test",
    viewer: { user_id: "u1", username: "ana", level: "LV0" },
    threads: [thread()],
    ...overrides,
  };
}
