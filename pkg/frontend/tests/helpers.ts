import { readFileSync } from "node:fs";
import { resolve } from "node:path";

/** Raw fixture bytes captured from the live service, so mocked
 * responses are byte-identical to real ones. */
export function fixture(name: string): string {
  return readFileSync(resolve(process.cwd(), "tests", "fixtures", name), "utf-8");
}

export interface Route {
  match(url: string, body: unknown): boolean;
  status: number;
  payload: string;
}

export function mockFetch(routes: Route[]): ReturnType<typeof createMock> {
  return createMock(routes);
}

function createMock(routes: Route[]) {
  const seen: Array<{ url: string; body: unknown }> = [];
  const fn = async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    seen.push({ url, body });
    for (const route of routes) {
      if (route.match(url, body)) {
        return new Response(route.payload, {
          status: route.status,
          headers: { "content-type": "application/json" },
        });
      }
    }
    throw new TypeError(`no route for ${url}`);
  };
  return { fn, seen };
}
