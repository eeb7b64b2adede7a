// Which controls each capability level gets. Cosmetic only: the server
// re-enforces every rule, so hiding a control is UX, not security.

import type { Level } from "./types";

export interface Affordances {
  canComment: boolean;
  canDragCluster: boolean;
  canReviewClusters: boolean;
  canSummarize: boolean;
  canProposeThread: boolean;
  canReviewThreads: boolean;
}

export function affordancesFor(level: Level): Affordances {
  return {
    canComment: true,
    canDragCluster: level === "LV0",
    canReviewClusters: level === "LV1",
    canSummarize: level === "LV1",
    canProposeThread: level === "LV2",
    canReviewThreads: level === "LV2",
  };
}
