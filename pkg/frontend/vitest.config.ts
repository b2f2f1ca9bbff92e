import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "node",
    include: ["test/**/*.test.ts"],
    // the conformance suite boots the Python server and plays full
    // episodes over a real socket, so it needs room
    testTimeout: 120_000,
    hookTimeout: 60_000,
  },
});
