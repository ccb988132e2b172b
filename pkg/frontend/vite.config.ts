/// <reference types="vitest/config" />
import { defineConfig } from "vite";

// dev server proxies API calls to a locally running `kgreason serve`
const API = "http://127.0.0.1:8000";

export default defineConfig({
  server: {
    proxy: Object.fromEntries(
      ["/ks", "/reason", "/entity", "/predicates", "/health", "/jobs", "/spec"].map(
        (path) => [path, { target: API, changeOrigin: true }],
      ),
    ),
  },
  test: {
    environment: "jsdom",
    include: ["tests/**/*.test.ts"],
  },
});
