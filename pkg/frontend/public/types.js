// Shapes of the /v1 API responses. The UI never computes effort or
// classification; everything on screen comes from these fields.
export {};
