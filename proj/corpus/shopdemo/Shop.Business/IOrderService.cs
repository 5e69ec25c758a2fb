using Shop.Data.Entities;

namespace Shop.Business
{
    public interface IOrderService
    {
        Order CreateOrder(int customerId, string sku, int quantity);
        bool PlaceOrder(Order order);
        OrderSummary Summarize(int orderId);
    }
}
