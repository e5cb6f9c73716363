// Thin fetch client with the concurrency contract the UI needs:
// per-slot request sequencing (a newer request supersedes an in-flight
// one; stale responses resolve to null), same-key dedup so pan jitter
// does not refetch, and snapshot pinning (responses from a different
// snapshot than the first one seen are discarded).

export interface FetchResponse {
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}

export type FetchLike = (url: string) => Promise<FetchResponse>;

export class ApiError extends Error {
  constructor(
    public status: number,
    public field: string,
    message: string,
  ) {
    super(message);
  }
}

interface Slot {
  seq: number;
  key: string | null;
  cached: unknown;
}

export class ApiClient {
  snapshotId: string | null = null;
  private slots = new Map<string, Slot>();

  constructor(
    private base: string,
    private fetchFn: FetchLike,
  ) {}

  private slot(name: string): Slot {
    let s = this.slots.get(name);
    if (!s) {
      s = { seq: 0, key: null, cached: null };
      this.slots.set(name, s);
    }
    return s;
  }

  /**
   * Fetch `path` for a logical slot ("grid", "track", ...). `key`
   * identifies the view that produced the request: identical keys are
   * served from the slot cache. Returns null when superseded or stale.
   */
  async get<T>(slotName: string, key: string, path: string): Promise<T | null> {
    const slot = this.slot(slotName);
    if (slot.key === key && slot.cached !== null) {
      return slot.cached as T;
    }
    const token = ++slot.seq;
    const resp = await this.fetchFn(this.base + path);
    if (slot.seq !== token) return null; // a newer request took over
    if (!resp.ok) {
      let field = "";
      let message = `HTTP ${resp.status}`;
      try {
        const body = (await resp.json()) as {
          error?: { field?: string; message?: string };
        };
        field = body.error?.field ?? "";
        message = body.error?.message ?? message;
      } catch {
        // non-JSON error body; keep the status message
      }
      throw new ApiError(resp.status, field, message);
    }
    const body = (await resp.json()) as T & { snapshot_id?: string };
    if (slot.seq !== token) return null;
    if (body.snapshot_id) {
      if (this.snapshotId === null) {
        this.snapshotId = body.snapshot_id;
      } else if (body.snapshot_id !== this.snapshotId) {
        return null; // different snapshot: stale by definition
      }
    }
    slot.key = key;
    slot.cached = body;
    return body;
  }
}
