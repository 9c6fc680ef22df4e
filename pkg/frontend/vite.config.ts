import { defineConfig } from "vitest/config";

export default defineConfig({
  server: {
    // Dev convenience: forward API calls to a locally running `tm serve`.
    proxy: {
      "/api": "http://localhost:8077",
    },
  },
  test: {
    environment: "happy-dom",
  },
});
