// End-to-end against a real service process: scripted onboarding, a
// comment, a drag-and-drop cluster proposal, three LV1 approvals from
// three separate sessions, the cluster appearing in a fourth session's
// polled view within five seconds, the summarize modal pre-filled with
// the stub draft (<= 20 words), and server-side rejection of forbidden
// calls with stable error codes.

import { spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { Client, ServiceError } from "../src/api";
import { App } from "../src/main";
import type { ThreadView } from "../src/types";

const PORT = 8600 + Math.floor(Math.random() * 300);
const BASE = `http://127.0.0.1:${PORT}`;
const ARTICLE = "cnn:frontend-integration";
const PAIRS: [string, string][] = [
  ["AI Image Generation Ethics", "Where should creators draw the line?"],
  ["Political Misinformation Online", "How should platforms react?"],
  ["Impact of AI on Elections", "What changes for voters?"],
  ["Responsibility of Tech Companies", "Who answers for tool misuse?"],
];

let service: ChildProcess;

async function until<T>(
  probe: () => T | Promise<T>,
  what: string,
  timeoutMs = 10_000,
): Promise<NonNullable<T>> {
  const deadline = Date.now() + timeoutMs;
  let lastError: unknown;
  for (;;) {
    try {
      const value = await probe();
      if (value) return value as NonNullable<T>;
    } catch (error) {
      lastError = error;
    }
    if (Date.now() > deadline) {
      throw new Error(`timed out waiting for ${what}${lastError ? `: ${lastError}` : ""}`);
    }
    await new Promise((resolve) => setTimeout(resolve, 100));
  }
}

function memoryStorage(): Pick<Storage, "getItem" | "setItem" | "removeItem"> {
  const map = new Map<string, string>();
  return {
    getItem: (key) => map.get(key) ?? null,
    setItem: (key, value) => void map.set(key, value),
    removeItem: (key) => void map.delete(key),
  };
}

function appRoot(): HTMLElement {
  const root = document.createElement("div");
  document.body.append(root);
  return root;
}

beforeAll(async () => {
  const db = join(mkdtempSync(join(tmpdir(), "roundtable-web-")), "events.db");
  service = spawn("roundtable", ["serve", "--host", "127.0.0.1", "--port", String(PORT), "--db", db], {
    stdio: "ignore",
  });
  await until(async () => (await fetch(`${BASE}/api/discussions`)).ok, "service startup");
  const bootstrap = new Client(BASE);
  await bootstrap.createDiscussion(ARTICLE, "An article body for the integration run.", PAIRS);
});

afterAll(() => {
  service?.kill();
});

describe("scripted end-to-end session", () => {
  it("runs onboarding, comment, drag-drop, three approvals, live cluster render, summary", async () => {
    // --- onboarding through the DOM form (LV0 driver session)
    const lv0Root = appRoot();
    const lv0App = new App({ baseUrl: BASE, root: lv0Root, pollMs: 400, storage: memoryStorage() });
    await lv0App.start();
    const username = await until(
      () => lv0Root.querySelector<HTMLInputElement>("#username-input"),
      "onboarding form",
    );
    username.value = "ana";
    username.dispatchEvent(new Event("input"));
    const level = lv0Root.querySelector<HTMLSelectElement>("#level-select")!;
    level.value = "LV0";
    level.dispatchEvent(new Event("change"));
    const join = lv0Root.querySelector<HTMLButtonElement>("#join-btn")!;
    expect(join.disabled).toBe(false);
    join.click();
    await until(() => lv0Root.querySelector("#overview"), "overview after join");
    expect(lv0Root.querySelectorAll(".thread-card").length).toBe(3);

    // --- post a comment through the composer
    (lv0Root.querySelector<HTMLElement>('[data-thread-id="t1"]'))!.click();
    await until(() => lv0Root.querySelector("#thread-view"), "thread screen");
    expect(lv0Root.querySelector(".guiding-question")!.textContent).toContain(
      "Where should creators draw the line?",
    );
    const composer = lv0Root.querySelector<HTMLTextAreaElement>("#comment-input")!;
    composer.value = "First thoughts from the scripted session.";
    lv0Root.querySelector<HTMLButtonElement>("#post-btn")!.click();
    await until(
      () => lv0Root.querySelectorAll("#thread-view .comment").length === 1,
      "posted comment render",
    );

    // an anchor comment from a second participant
    const anchorClient = new Client(BASE);
    const anchorSession = await anchorClient.register("abe", "LV0", ARTICLE);
    anchorClient.token = anchorSession.token;
    await anchorClient.postComment("t1", "A second viewpoint to anchor on.");
    await until(
      () => lv0Root.querySelectorAll("#thread-view .comment").length === 2,
      "poll picked up the anchor comment",
    );

    // --- three LV1 sessions and one LV2 observer session
    const reviewers: Client[] = [];
    for (const name of ["bea", "ben", "bess"]) {
      const client = new Client(BASE);
      const session = await client.register(name, "LV1", ARTICLE);
      client.token = session.token;
      reviewers.push(client);
    }
    const observerRoot = appRoot();
    const observerClient = new Client(BASE);
    const observerSession = await observerClient.register("cara", "LV2", ARTICLE);
    observerClient.token = observerSession.token;
    const storageForObserver = memoryStorage();
    storageForObserver.setItem("roundtable-session", JSON.stringify(observerSession));
    const observerApp = new App({
      baseUrl: BASE,
      root: observerRoot,
      pollMs: 400,
      storage: storageForObserver,
    });
    await observerApp.start();
    (observerRoot.querySelector<HTMLElement>('[data-thread-id="t1"]'))!.click();
    await until(() => observerRoot.querySelector("#thread-view"), "observer thread screen");
    expect(observerRoot.querySelector(".cluster-box")).toBeNull();

    // --- drag-and-drop: move ana's comment onto abe's
    const cards = await until(() => {
      const found = lv0Root.querySelectorAll<HTMLElement>("#thread-view .comment.top-level");
      return found.length === 2 ? found : null;
    }, "two draggable cards");
    const source = cards[0]!;
    const target = cards[1]!;
    expect(source.draggable).toBe(true);
    source.dispatchEvent(new Event("dragstart"));
    target.dispatchEvent(new Event("dragover"));
    target.dispatchEvent(new Event("drop"));
    await until(() => lv0Root.querySelector("#my-pending"), "tentative arrangement for proposer");
    // pending proposals stay invisible to the observer
    expect(observerRoot.querySelector("#my-pending")).toBeNull();

    // --- three approvals from three distinct LV1 sessions
    const queue = await reviewers[0]!.clusterReviews(observerSession.discussion_id);
    expect(queue.queue.length).toBe(1);
    const activityId = queue.queue[0]!.activity_id;
    const before = Date.now();
    let clusterId = "";
    for (const reviewer of reviewers) {
      const outcome = await reviewer.voteCluster(activityId, "approve");
      if (outcome.outcome.status === "accepted") clusterId = outcome.outcome.cluster_id!;
    }
    expect(clusterId).not.toBe("");

    // --- the fourth session's polled view renders the blue box within 5 s
    await until(
      () => observerRoot.querySelector(".cluster-box"),
      "cluster visible in observer view",
      5_000,
    );
    expect(Date.now() - before).toBeLessThan(5_000);
    expect(observerRoot.querySelectorAll(".cluster-box .comment").length).toBe(2);

    // --- LV1 summarize modal shows the stub draft (<= 20 words), saving freezes
    const lv1Root = appRoot();
    const lv1Storage = memoryStorage();
    const beaSession = await (async () => {
      const probe = new Client(BASE);
      const session = await probe.register("bea-ui", "LV1", ARTICLE);
      return session;
    })();
    lv1Storage.setItem("roundtable-session", JSON.stringify(beaSession));
    const lv1App = new App({ baseUrl: BASE, root: lv1Root, pollMs: 400, storage: lv1Storage });
    await lv1App.start();
    (lv1Root.querySelector<HTMLElement>('[data-thread-id="t1"]'))!.click();
    await until(() => lv1Root.querySelector(".summarize-btn"), "summarize button for LV1");
    lv1Root.querySelector<HTMLButtonElement>(".summarize-btn")!.click();
    const textarea = await until(
      () => lv1Root.querySelector<HTMLTextAreaElement>("#summary-text"),
      "summarize modal",
    );
    const draftWords = textarea.value.trim().split(/\s+/).length;
    expect(draftWords).toBeGreaterThan(0);
    expect(draftWords).toBeLessThanOrEqual(20);
    textarea.value = "A concise human-edited summary of the cluster.";
    lv1Root.querySelector<HTMLButtonElement>("#save-summary-btn")!.click();
    await until(() => lv1Root.querySelector(".summary-banner"), "summary banner after save");

    // the observer sees the summary on the overview card too
    observerRoot.querySelector<HTMLButtonElement>("#back-btn")!.click();
    await until(
      () => observerRoot.querySelector(".summary-chip"),
      "summary surfaced on the overview",
      5_000,
    );

    lv0App.stop();
    observerApp.stop();
    lv1App.stop();
  }, 60_000);

  it("shows a duplicate username conflict inline during onboarding", async () => {
    const root = appRoot();
    const app = new App({ baseUrl: BASE, root, pollMs: 5000, storage: memoryStorage() });
    await app.start();
    const username = await until(
      () => root.querySelector<HTMLInputElement>("#username-input"),
      "onboarding form",
    );
    username.value = "ana"; // taken in the previous test
    username.dispatchEvent(new Event("input"));
    const level = root.querySelector<HTMLSelectElement>("#level-select")!;
    level.value = "LV1";
    level.dispatchEvent(new Event("change"));
    root.querySelector<HTMLButtonElement>("#join-btn")!.click();
    await until(
      () => root.querySelector("#onboarding-error")?.textContent?.includes("taken"),
      "inline conflict message",
    );
    app.stop();
  });
});

describe("role gating is enforced server-side", () => {
  it("rejects forbidden direct API calls with stable codes", async () => {
    const lv0 = new Client(BASE);
    const lv0Session = await lv0.register("gate-lv0", "LV0", ARTICLE);
    lv0.token = lv0Session.token;
    const lv1 = new Client(BASE);
    lv1.token = (await lv1.register("gate-lv1", "LV1", ARTICLE)).token;
    const lv2 = new Client(BASE);
    lv2.token = (await lv2.register("gate-lv2", "LV2", ARTICLE)).token;

    const expectCode = async (promise: Promise<unknown>, code: string) => {
      try {
        await promise;
        throw new Error(`expected ${code}`);
      } catch (error) {
        expect(error).toBeInstanceOf(ServiceError);
        expect((error as ServiceError).code).toBe(code);
      }
    };

    // LV0 cannot review, summarize, or touch thread lifecycles
    await expectCode(lv0.voteCluster("a1", "approve"), "forbidden");
    await expectCode(lv0.saveSummary("k1", "text", "draft"), "forbidden");
    await expectCode(lv0.proposeThread(lv0Session.discussion_id, "T", "q", "user_authored"), "forbidden");
    await expectCode(lv0.clusterReviews(lv0Session.discussion_id), "forbidden");
    // LV1 cannot propose clusters or threads
    await expectCode(
      lv1.proposeCluster("t1", "c1", { anchorCommentId: "c2" }),
      "forbidden",
    );
    await expectCode(lv1.proposeThread(lv0Session.discussion_id, "T", "q", "user_authored"), "forbidden");
    await expectCode(lv1.suggestionPool(lv0Session.discussion_id), "forbidden");
    // LV2 cannot propose cluster moves or review them
    await expectCode(lv2.proposeCluster("t1", "c1", { anchorCommentId: "c2" }), "forbidden");
    await expectCode(lv2.voteCluster("a1", "approve"), "forbidden");

    // a reply under the summarized cluster from the first test is frozen
    const view = await lv2.view(lv0Session.discussion_id);
    const thread = view.view.threads.find((t) =>
      t.layout.some((item) => item.kind === "cluster" && item.summarized),
    );
    expect(thread).toBeTruthy();
    const frozen = thread!.layout.find(
      (item) => item.kind === "cluster" && item.summarized,
    ) as Extract<ThreadView["layout"][number], { kind: "cluster" }>;
    await expectCode(
      lv2.postComment(thread!.thread_id, "late reply", frozen.comments[0]!.comment_id),
      "cluster-frozen",
    );

    // unauthenticated calls are rejected
    const anonymous = new Client(BASE);
    await expectCode(anonymous.postComment("t1", "hello"), "unauthorized");
  });
});
