import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    // training and the python round-trip need the whole machine to
    // themselves for stable wall times
    fileParallelism: false,
    testTimeout: 120_000,
  },
});
