using Shop.Data.Entities;

namespace Shop.Business.Messaging
{
    public class NotificationService
    {
        public Message Welcome(Customer customer)
        {
            return MessageFactory.Create("welcome", customer.Email);
        }
    }
}
