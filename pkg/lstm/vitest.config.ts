import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["tests/**/*.test.ts"],
    testTimeout: 180_000,
    hookTimeout: 60_000,
    // tfjs keeps wasm/cpu kernels in module state; a single fork avoids
    // cross-test backend races
    pool: "forks",
    poolOptions: { forks: { singleFork: true } },
  },
});
