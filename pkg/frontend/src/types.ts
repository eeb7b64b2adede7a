// Shapes of the per-user projection the service returns. The client never
// derives authoritative state from these; a refresh replaces them wholesale.

export type Level = "LV0" | "LV1" | "LV2";

export interface UserInfo {
  user_id: string;
  username: string;
  level: Level;
}

export interface CommentView {
  comment_id: string;
  thread_id: string;
  author_id: string;
  author: string;
  body: string | null;
  deleted: boolean;
  parent_id: string | null;
  created_at: string;
  edited_at: string | null;
  like_count: number;
  liked_by_viewer: boolean;
  replies: CommentView[];
}

export interface SummaryView {
  summary_id: string;
  cluster_id: string;
  thread_id: string;
  author_id: string;
  author: string;
  text: string;
  ai_suggested_text: string;
  created_at: string;
}

export type LayoutItem =
  | { kind: "comment"; comment: CommentView }
  | {
      kind: "cluster";
      cluster_id: string;
      summarized: boolean;
      summary: SummaryView | null;
      comments: CommentView[];
    };

export interface ThreadView {
  thread_id: string;
  topic: string;
  guiding_question: string;
  origin: "initial" | "user_created";
  ordering_index: number;
  created_at: string;
  summaries: SummaryView[];
  layout: LayoutItem[];
}

export interface SnapshotItem {
  kind: "comment" | "cluster";
  comment_id?: string;
  cluster_id?: string | null;
  member_comment_ids?: string[];
}

export interface ActivityView {
  activity_id: string;
  thread_id: string;
  proposer_id: string;
  moved_comment_id: string;
  anchor_comment_id: string | null;
  target_cluster_id: string | null;
  status: string;
  created_at: string;
  approve_count: number;
  decline_count: number;
  snapshot_before: SnapshotItem[];
  snapshot_after: SnapshotItem[];
  my_vote: "approve" | "decline" | null;
}

export interface ProposalView {
  proposal_id: string;
  proposer_id: string;
  proposer: string;
  topic: string;
  guiding_question: string;
  source: "user_authored" | "ai_suggested";
  status: string;
  created_at: string;
  approve_count: number;
  decline_count: number;
  created_thread_id: string | null;
  my_vote: "approve" | "decline" | null;
}

export interface PoolPair {
  topic: string;
  question: string;
}

export interface DiscussionView {
  discussion_id: string;
  article_ref: string;
  viewer: UserInfo;
  threads: ThreadView[];
  my_pending_activities?: ActivityView[];
  cluster_review_queue?: ActivityView[];
  thread_review_queue?: ProposalView[];
  my_thread_proposals?: ProposalView[];
  suggestion_pool?: PoolPair[];
}

export interface SummaryDraft {
  text: string;
  word_count: number;
}

export interface ReviewOutcome {
  status: string;
  approve_count: number;
  decline_count: number;
  cluster_id?: string;
  thread_id?: string;
}
