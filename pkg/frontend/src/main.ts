/**
 * Page entry.  The API base URL is the single configuration knob,
 * read from the ?api= query parameter; default is the local service.
 */

import { ApiClient } from "./api.js";
import { Bench } from "./bench.js";
import { mountBench } from "./dom.js";

const DEFAULT_BASE = "http://127.0.0.1:8000";

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get("api") ?? DEFAULT_BASE;

const root = document.getElementById("bench");
if (root === null) {
  throw new Error("missing #bench element");
}

const bench = new Bench(new ApiClient(baseUrl));
mountBench(root, bench, { baseUrl });
void bench.start();
