// Drag-and-drop clustering: dragging a top-level comment onto another
// comment (or an open cluster) issues exactly one cluster proposal.
// Replies are never wired as drag sources, so they cannot be moved alone.
// Drag state lives module-side rather than in DataTransfer so the flow
// also works under test DOMs without a DataTransfer implementation.

export interface DragSource {
  commentId: string;
  threadId: string;
}

export type DropTarget =
  | { kind: "comment"; commentId: string; threadId: string }
  | { kind: "cluster"; clusterId: string; threadId: string };

export type ProposeHandler = (source: DragSource, target: DropTarget) => void;

let current: DragSource | null = null;

export function activeDrag(): DragSource | null {
  return current;
}

export function wireDragSource(el: HTMLElement, source: DragSource): void {
  el.draggable = true;
  el.classList.add("draggable");
  el.addEventListener("dragstart", (event) => {
    current = source;
    try {
      event.dataTransfer?.setData("text/plain", source.commentId);
    } catch {
      // test DOMs may not implement DataTransfer
    }
  });
  el.addEventListener("dragend", () => {
    current = null;
  });
}

export function wireDropTarget(
  el: HTMLElement,
  target: DropTarget,
  onPropose: ProposeHandler,
): void {
  el.classList.add("drop-target");
  el.addEventListener("dragover", (event) => {
    if (current && current.threadId === target.threadId) {
      event.preventDefault();
      el.classList.add("drop-hover");
    }
  });
  el.addEventListener("dragleave", () => el.classList.remove("drop-hover"));
  el.addEventListener("drop", (event) => {
    event.preventDefault();
    el.classList.remove("drop-hover");
    const source = current;
    current = null;
    if (!source || source.threadId !== target.threadId) return;
    if (target.kind === "comment" && target.commentId === source.commentId) return;
    onPropose(source, target);
  });
}
