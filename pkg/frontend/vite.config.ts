/// <reference types="vitest/config" />
import { defineConfig } from "vite";

// base "./" so the bundle works under the service's /ui mount
export default defineConfig({
  base: "./",
  build: { outDir: "dist" },
  server: {
    // dev server proxies API calls to a locally running `fpqm serve`
    proxy: { "/api": "http://127.0.0.1:8760" },
  },
  test: {
    environment: "happy-dom",
    include: ["tests/**/*.test.ts"],
  },
});
